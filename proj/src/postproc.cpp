#include "burnback/postproc.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>

namespace burnback::post {

namespace {

// Nodes at or below tau are burnt. Crossings only sit on edges joining a
// burnt node to an unburnt one, so the denominator never vanishes and a node
// exactly at tau is hit exactly.
bool burnt(double v) { return v <= 0.0; }

std::array<double, 3> relative_values(const Mesh& mesh, std::span<const double> s, int tri, double tau) {
    std::array<double, 3> v{};
    for (int k = 0; k < 3; ++k) v[k] = s[mesh.triangles[tri][k]] - tau;
    return v;
}

Vec2 crossing(Vec2 p, Vec2 q, double vp, double vq) { return p + (vp / (vp - vq)) * (q - p); }

} // namespace

double Polyline::length() const {
    double l = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) l += distance(points[i - 1], points[i]);
    return l;
}

std::vector<Segment> level_segments(const Mesh& mesh, std::span<const double> s, double tau) {
    std::vector<Segment> out;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto v = relative_values(mesh, s, t, tau);
        const int below = burnt(v[0]) + burnt(v[1]) + burnt(v[2]);
        if (below == 0 || below == 3) continue;
        // The odd vertex out sits alone on its side; both crossings touch it.
        int lone = 0;
        for (int k = 0; k < 3; ++k) {
            const bool k_below = burnt(v[k]);
            if ((below == 1) == k_below) lone = k;
        }
        const auto& tri = mesh.triangles[t];
        const int k1 = (lone + 1) % 3;
        const int k2 = (lone + 2) % 3;
        const Vec2 p = mesh.nodes[tri[lone]];
        out.push_back({crossing(p, mesh.nodes[tri[k1]], v[lone], v[k1]),
                       crossing(p, mesh.nodes[tri[k2]], v[lone], v[k2]), t});
    }
    return out;
}

std::vector<Polyline> isocontour(const Mesh& mesh, std::span<const double> s, double tau) {
    using EdgeKey = std::pair<int, int>;
    struct Piece {
        EdgeKey ends[2];
        Vec2 pts[2];
    };
    std::vector<Piece> pieces;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto v = relative_values(mesh, s, t, tau);
        const int below = burnt(v[0]) + burnt(v[1]) + burnt(v[2]);
        if (below == 0 || below == 3) continue;
        const auto& tri = mesh.triangles[t];
        Piece piece;
        int n = 0;
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            const double va = v[k];
            const double vb = v[(k + 1) % 3];
            if (burnt(va) == burnt(vb)) continue;
            piece.ends[n] = {std::min(a, b), std::max(a, b)};
            piece.pts[n] = crossing(mesh.nodes[a], mesh.nodes[b], va, vb);
            ++n;
        }
        pieces.push_back(piece);
    }

    std::map<EdgeKey, std::vector<int>> at;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
        for (const auto& e : pieces[i].ends) at[e].push_back(i);

    std::vector<char> used(pieces.size(), 0);
    std::vector<Polyline> out;
    auto walk = [&](int first, int from_end) {
        Polyline line;
        int cur = first;
        int entry = from_end;
        line.points.push_back(pieces[cur].pts[entry]);
        const EdgeKey start_key = pieces[cur].ends[entry];
        while (true) {
            used[cur] = 1;
            const int exit = 1 - entry;
            line.points.push_back(pieces[cur].pts[exit]);
            const EdgeKey key = pieces[cur].ends[exit];
            int next = -1;
            for (int cand : at[key])
                if (!used[cand]) next = cand;
            if (next < 0) {
                line.closed = key == start_key && line.points.size() > 2;
                break;
            }
            entry = pieces[next].ends[0] == key ? 0 : 1;
            cur = next;
        }
        out.push_back(std::move(line));
    };
    // Open chains start on edges used once (mesh boundary), then the loops.
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
        if (used[i]) continue;
        for (int e = 0; e < 2; ++e) {
            if (!used[i] && at[pieces[i].ends[e]].size() == 1) walk(i, e);
        }
    }
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
        if (!used[i]) walk(i, 0);
    return out;
}

double perimeter(const Mesh& mesh, std::span<const double> s, double tau) {
    double total = 0.0;
    for (const auto& seg : level_segments(mesh, s, tau)) total += distance(seg.a, seg.b);
    return total;
}

double port_area(const Mesh& mesh, std::span<const double> s, double tau) {
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto v = relative_values(mesh, s, t, tau);
        const int below = burnt(v[0]) + burnt(v[1]) + burnt(v[2]);
        if (below == 0) continue;
        if (below == 3) {
            total += mesh.signed_area(t);
            continue;
        }
        const auto& tri = mesh.triangles[t];
        std::array<Vec2, 4> poly{};
        int n = 0;
        for (int k = 0; k < 3; ++k) {
            const int k1 = (k + 1) % 3;
            if (burnt(v[k])) poly[n++] = mesh.nodes[tri[k]];
            if (burnt(v[k]) != burnt(v[k1])) {
                poly[n++] = crossing(mesh.nodes[tri[k]], mesh.nodes[tri[k1]], v[k], v[k1]);
            }
        }
        double a = 0.0;
        for (int k = 0; k < n; ++k) a += cross(poly[k], poly[(k + 1) % n]);
        total += 0.5 * a;
    }
    return total;
}

std::vector<int> triangle_labels(const Mesh& mesh, std::span<const int> node_labels) {
    std::vector<int> out(mesh.triangles.size(), 1);
    if (node_labels.empty()) return out;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        int fast = 0;
        for (int v : mesh.triangles[t]) fast += node_labels[v] == 2;
        out[t] = fast >= 2 ? 2 : 1;
    }
    return out;
}

BurnCurves burn_curves(const Mesh& mesh, std::span<const double> s, std::span<const int> node_labels,
                       std::span<const double> tau, const CurveOptions& options) {
    if (!(options.rate_ratio >= 1.0)) throw DomainError("burn_curves: rate ratio must be >= 1");
    if (!node_labels.empty() && node_labels.size() != mesh.nodes.size()) {
        throw DomainError("burn_curves: label count does not match node count");
    }
    for (std::size_t k = 1; k < tau.size(); ++k) {
        if (!(tau[k] > tau[k - 1])) throw DomainError("burn_curves: tau grid must be strictly increasing");
    }
    const auto labels = triangle_labels(mesh, node_labels);

    BurnCurves c;
    c.grain_length = options.grain_length;
    for (double t : tau) {
        double p1 = 0.0, p2 = 0.0;
        for (const auto& seg : level_segments(mesh, s, t)) {
            (labels[seg.triangle] == 2 ? p2 : p1) += distance(seg.a, seg.b);
        }
        c.tau.push_back(t);
        c.perimeter_slow.push_back(p1);
        c.perimeter_fast.push_back(p2);
        c.perimeter.push_back(p1 + p2);
        c.equivalent.push_back(p1 + options.rate_ratio * p2);
        c.port_area.push_back(options.initial_port_area + port_area(mesh, s, t));
    }
    return c;
}

ErrorField error_field(const Mesh& mesh, std::span<const double> s, const std::function<double(Vec2)>& exact) {
    ErrorField out;
    std::vector<double> ex(mesh.nodes.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        ex[i] = exact(mesh.nodes[i]);
        peak = std::max(peak, ex[i]);
    }
    if (!(peak > 0.0)) peak = 1.0;
    out.error.resize(ex.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        out.error[i] = (s[i] - ex[i]) / peak;
        const double a = std::abs(out.error[i]);
        sum += a;
        if (a > out.summary.max_abs || out.summary.argmax < 0) {
            out.summary.max_abs = a;
            out.summary.argmax = static_cast<int>(i);
        }
    }
    out.summary.mean_abs = ex.empty() ? 0.0 : sum / static_cast<double>(ex.size());
    return out;
}

ErrorField error_field(const Mesh& mesh, std::span<const double> s, const Contour& oracle) {
    return error_field(mesh, s, [&oracle](Vec2 p) { return distance(p, oracle); });
}

} // namespace burnback::post
