#include "burnback/eikonal.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace burnback::eikonal {

using std::numbers::pi;

RateField uniform_rate(const Mesh& mesh, double rate) {
    RateField r(mesh.nodes.size(), rate);
    check_rates(mesh, r);
    return r;
}

void check_rates(const Mesh& mesh, std::span<const double> rate) {
    if (rate.size() != mesh.nodes.size()) throw DomainError("rate field size does not match node count");
    for (std::size_t i = 0; i < rate.size(); ++i) {
        if (!(rate[i] > 0.0) || !std::isfinite(rate[i])) {
            throw DomainError("rate at node " + std::to_string(i) + " must be positive and finite");
        }
    }
}

void check_config(const SolverConfig& c) {
    if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) throw DomainError("cfl_safety must be in (0, 1]");
    if (!(c.convergence_tol > 0.0)) throw DomainError("convergence_tol must be > 0");
    if (c.gradient_floor && !(*c.gradient_floor > 0.0)) throw DomainError("gradient_floor must be > 0");
    if (c.quiet_steps < 1) throw DomainError("quiet_steps must be >= 1");
    if (c.max_steps < 1) throw DomainError("max_steps must be >= 1");
}

std::vector<Vec2> triangle_gradients(const Mesh& mesh, std::span<const double> s) {
    std::vector<Vec2> g(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 p0 = mesh.nodes[tri[0]];
        const Vec2 e1 = mesh.nodes[tri[1]] - p0;
        const Vec2 e2 = mesh.nodes[tri[2]] - p0;
        const double ds1 = s[tri[1]] - s[tri[0]];
        const double ds2 = s[tri[2]] - s[tri[0]];
        const double det = cross(e1, e2);
        // Solve [e1; e2] g = [ds1; ds2].
        g[t] = {(ds1 * e2.y - ds2 * e1.y) / det, (ds2 * e1.x - ds1 * e2.x) / det};
    }
    return g;
}

double hamiltonian(double rate, Vec2 grad) { return 1.0 - rate * norm(grad); }

void apply_bc(const Mesh& mesh, Accumulators& acc) {
    for (int i = 0; i < mesh.node_count(); ++i) {
        switch (mesh.markers[i]) {
        case Marker::Free:
            acc.diffusion[i] *= 2.0;
            break;
        case Marker::Symmetry: {
            const int ref = mesh.symmetry_ref[i];
            if (ref < 0 || ref >= static_cast<int>(mesh.symmetry_lines.size())) {
                throw SolverError("SYMMETRY node without a symmetry line", i);
            }
            const Vec2 t = mesh.symmetry_lines[ref].direction;
            const Vec2 u = acc.mean_gradient[i];
            const Vec2 mirror = 2.0 * dot(u, t) * t - u;
            acc.mean_gradient[i] = 0.5 * (u + mirror);
            acc.diffusion[i] *= 2.0;
            break;
        }
        default:
            break;
        }
    }
}

Stepper::Stepper(const Mesh& mesh, const GeomCache& cache, std::span<const double> rate,
                 const SolverConfig& config)
    : mesh_(mesh), cache_(cache), rate_(rate), config_(config) {
    check_config(config_);
    check_rates(mesh_, rate_);
    floor_ = config_.gradient_floor ? *config_.gradient_floor
                                    : 1.0 / *std::max_element(rate_.begin(), rate_.end());

    const int nn = mesh_.node_count();
    edge_weight_sum_.assign(nn, 0.0);
    boundary_normal_.assign(nn, Vec2{});
    auto corner = [&](int tri, int node) {
        const auto& t = mesh_.triangles[tri];
        const int k = t[0] == node ? 0 : (t[1] == node ? 1 : 2);
        return cache_.corner_angle[tri][k];
    };
    for (std::size_t e = 0; e < cache_.edges.size(); ++e) {
        const Edge& edge = cache_.edges[e];
        double beta_a = 0.0, beta_b = 0.0;
        for (int tri : {edge.left, edge.right}) {
            if (tri < 0) continue;
            beta_a += std::tan(0.5 * corner(tri, edge.a));
            beta_b += std::tan(0.5 * corner(tri, edge.b));
        }
        edge_weight_sum_[edge.a] += beta_a / cache_.edge_length[e];
        edge_weight_sum_[edge.b] += beta_b / cache_.edge_length[e];
        boundary_normal_[edge.a] += beta_a * cache_.edge_unit[e];
        boundary_normal_[edge.b] -= beta_b * cache_.edge_unit[e];
    }
}

std::vector<double> Stepper::diffusion_coefficients(std::span<const Vec2> grad) const {
    // Rate times the normalised gradient magnitude, over pi.
    const int nn = mesh_.node_count();
    std::vector<double> eps(nn, 0.0);
    double global_max = 0.0;
    if (config_.diffusion_scale == DiffusionScale::Global) {
        for (const auto& g : grad) global_max = std::max(global_max, norm(g));
    }
    for (int i = 0; i < nn; ++i) {
        double gmax = global_max;
        if (config_.diffusion_scale == DiffusionScale::Local) {
            for (int t : cache_.triangles_of(i)) gmax = std::max(gmax, norm(grad[t]));
        }
        const double r = rate_[i];
        eps[i] = r * r * std::max(gmax, floor_) / pi;
    }
    return eps;
}

Accumulators Stepper::assemble(std::span<const Vec2> grad) const {
    return assemble(grad, diffusion_coefficients(grad));
}

Accumulators Stepper::assemble(std::span<const Vec2> grad, std::span<const double> eps) const {
    const int nn = mesh_.node_count();
    Accumulators acc;
    acc.mean_gradient.assign(nn, Vec2{});
    acc.diffusion.assign(nn, 0.0);

    auto corner = [&](int tri, int node) {
        const auto& t = mesh_.triangles[tri];
        const int k = t[0] == node ? 0 : (t[1] == node ? 1 : 2);
        return cache_.corner_angle[tri][k];
    };

    for (std::size_t e = 0; e < cache_.edges.size(); ++e) {
        const Edge& edge = cache_.edges[e];
        const Vec2 n = cache_.edge_unit[e]; // a -> b
        Vec2 avg;
        double beta_a = 0.0, beta_b = 0.0;
        int count = 0;
        for (int tri : {edge.left, edge.right}) {
            if (tri < 0) continue;
            const double ta = corner(tri, edge.a);
            const double tb = corner(tri, edge.b);
            acc.mean_gradient[edge.a] += 0.5 * ta * grad[tri];
            acc.mean_gradient[edge.b] += 0.5 * tb * grad[tri];
            beta_a += std::tan(0.5 * ta);
            beta_b += std::tan(0.5 * tb);
            avg += grad[tri];
            ++count;
        }
        avg = avg / count;
        const double slope = dot(avg, n);
        acc.diffusion[edge.a] += eps[edge.a] * beta_a * slope;
        acc.diffusion[edge.b] -= eps[edge.b] * beta_b * slope;
    }

    for (int i = 0; i < nn; ++i) {
        acc.mean_gradient[i] = acc.mean_gradient[i] / cache_.node_angle_sum[i];
        if (config_.free_boundary != FreeBoundary::LinearExact) continue;
        if (mesh_.markers[i] == Marker::Free) {
            acc.diffusion[i] -= eps[i] * dot(boundary_normal_[i], acc.mean_gradient[i]);
        } else if (mesh_.markers[i] == Marker::Symmetry && mesh_.symmetry_ref[i] >= 0) {
            // Only the part along the line survives mirroring; nonzero at corners.
            const Vec2 t = mesh_.symmetry_lines[mesh_.symmetry_ref[i]].direction;
            acc.diffusion[i] -= eps[i] * dot(boundary_normal_[i], t) * dot(acc.mean_gradient[i], t);
        }
    }
    return acc;
}

Stepper::Info Stepper::advance(std::vector<double>& s, std::span<const Vec2> grad) {
    const auto eps = diffusion_coefficients(grad);
    Accumulators acc = assemble(grad, eps);
    apply_bc(mesh_, acc);

    const int nn = mesh_.node_count();
    double dt = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nn; ++i) {
        if (mesh_.markers[i] == Marker::Ignition) continue;
        const double bc = mesh_.markers[i] == Marker::Interior ? 1.0 : 2.0;
        const double stiffness = rate_[i] / cache_.node_min_height[i] + bc * eps[i] * edge_weight_sum_[i];
        dt = std::min(dt, 1.0 / stiffness);
    }
    if (!std::isfinite(dt)) return {0.0, 0.0}; // every node pinned
    dt *= config_.cfl_safety;

    double max_res = 0.0;
    for (int i = 0; i < nn; ++i) {
        if (mesh_.markers[i] == Marker::Ignition) continue;
        const double h = hamiltonian(rate_[i], acc.mean_gradient[i]) + acc.diffusion[i];
        const double next = s[i] + dt * h;
        if (!std::isfinite(next)) throw SolverError("non-finite arrival time", i);
        s[i] = next;
        max_res = std::max(max_res, std::abs(h));
    }
    return {dt, max_res};
}

std::vector<double> step(const Mesh& mesh, const GeomCache& cache, std::span<const double> rate,
                         std::span<const double> s, const SolverConfig& config) {
    Stepper stepper(mesh, cache, rate, config);
    std::vector<double> out(s.begin(), s.end());
    const auto grad = triangle_gradients(mesh, out);
    stepper.advance(out, grad);
    return out;
}

ArrivalField solve(const Mesh& mesh, std::span<const double> rate, const SolverConfig& config,
                   std::span<const double> ignition_values) {
    const int nn = mesh.node_count();
    if (std::none_of(mesh.markers.begin(), mesh.markers.end(),
                     [](Marker m) { return m == Marker::Ignition; })) {
        throw DomainError("solve: mesh has no IGNITION node");
    }
    if (!ignition_values.empty() && static_cast<int>(ignition_values.size()) != nn) {
        throw DomainError("solve: ignition value array does not match node count");
    }
    const GeomCache cache = geom_cache(mesh);
    Stepper stepper(mesh, cache, rate, config);

    ArrivalField out;
    out.s.assign(nn, 0.0);
    if (!ignition_values.empty()) {
        for (int i = 0; i < nn; ++i)
            if (mesh.markers[i] == Marker::Ignition) out.s[i] = ignition_values[i];
    }
    const double threshold = config.convergence_tol / *std::min_element(rate.begin(), rate.end());

    std::vector<Vec2> grad = triangle_gradients(mesh, out.s);
    int quiet = 0;
    for (long k = 1; k <= config.max_steps; ++k) {
        const auto info = stepper.advance(out.s, grad);
        out.history.push_back({k, info.dt, info.max_residual});
        std::vector<Vec2> next = triangle_gradients(mesh, out.s);
        double change = 0.0;
        for (std::size_t t = 0; t < next.size(); ++t) change = std::max(change, norm(next[t] - grad[t]));
        grad = std::move(next);
        out.steps = k;
        quiet = change < threshold ? quiet + 1 : 0;
        if (quiet >= config.quiet_steps) {
            out.converged = true;
            break;
        }
    }
    out.gradient = std::move(grad);
    return out;
}

namespace {

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string field_csv(const Mesh& mesh, std::span<const double> s) {
    std::string out = "node_index,x,y,s\n";
    for (int i = 0; i < mesh.node_count(); ++i) {
        out += std::to_string(i) + "," + g12(mesh.nodes[i].x) + "," + g12(mesh.nodes[i].y) + "," +
               g12(s[i]) + "\n";
    }
    return out;
}

std::string history_csv(std::span<const StepRecord> history) {
    std::string out = "step,dt,max_residual\n";
    for (const auto& h : history) {
        out += std::to_string(h.step) + "," + g12(h.dt) + "," + g12(h.max_residual) + "\n";
    }
    return out;
}

std::vector<double> parse_field_csv(std::string_view text, int expected_nodes) {
    std::vector<double> s(expected_nodes, std::numeric_limits<double>::quiet_NaN());
    int line = 0;
    std::size_t pos = 0;
    int seen = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view row = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (row.empty()) continue;
        if (line == 1) {
            if (!row.starts_with("node_index,x,y,s")) throw ParseError("unexpected field CSV header", line);
            continue;
        }
        std::vector<std::string_view> cols;
        std::size_t c = 0;
        while (true) {
            const std::size_t comma = row.find(',', c);
            cols.push_back(row.substr(c, comma == std::string_view::npos ? std::string_view::npos : comma - c));
            if (comma == std::string_view::npos) break;
            c = comma + 1;
        }
        if (cols.size() < 4) throw ParseError("field row needs node_index,x,y,s", line);
        int idx = 0;
        double v = 0.0;
        auto r1 = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), idx);
        auto r2 = std::from_chars(cols[3].data(), cols[3].data() + cols[3].size(), v);
        if (r1.ec != std::errc() || r2.ec != std::errc()) throw ParseError("bad number in field row", line);
        if (idx < 0 || idx >= expected_nodes) throw ParseError("node index out of range", line);
        s[idx] = v;
        ++seen;
    }
    if (seen != expected_nodes) {
        throw ParseError("field has " + std::to_string(seen) + " rows, mesh has " +
                             std::to_string(expected_nodes) + " nodes",
                         0);
    }
    return s;
}

} // namespace burnback::eikonal
