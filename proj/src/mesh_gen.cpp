#include "burnback/errors.hpp"
#include "burnback/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <string>
#include <vector>

namespace burnback {

namespace {

// Accumulates boundary roles per node and resolves corners by priority.
class MarkerPainter {
public:
    explicit MarkerPainter(Mesh& mesh) : mesh_(mesh) {
        mesh_.markers.assign(mesh_.nodes.size(), Marker::Interior);
        mesh_.symmetry_ref.assign(mesh_.nodes.size(), -1);
    }

    // Returns the symmetry line index used for `marker` on this side (or -1).
    int side_line(Marker marker, Vec2 a, Vec2 b) {
        if (marker != Marker::Symmetry) return -1;
        mesh_.symmetry_lines.push_back({a, normalized(b - a)});
        return static_cast<int>(mesh_.symmetry_lines.size()) - 1;
    }

    void paint(int node, Marker marker, int line) {
        if (marker_priority(marker) > marker_priority(mesh_.markers[node])) {
            mesh_.markers[node] = marker;
            mesh_.symmetry_ref[node] = marker == Marker::Symmetry ? line : -1;
        }
    }

private:
    Mesh& mesh_;
};

// Splits cell (a,b,c,d), counter-clockwise in index space, along a-c.
void add_cell(Mesh& m, int a, int b, int c, int d) {
    m.triangles.push_back({a, b, c});
    m.triangles.push_back({a, c, d});
}

std::vector<Vec2> resample(std::span<const Vec2> poly, int n) {
    if (static_cast<int>(poly.size()) == n + 1) return {poly.begin(), poly.end()};
    std::vector<double> s(poly.size(), 0.0);
    for (std::size_t i = 1; i < poly.size(); ++i) s[i] = s[i - 1] + distance(poly[i - 1], poly[i]);
    const double total = s.back();
    std::vector<Vec2> out;
    out.reserve(n + 1);
    std::size_t seg = 1;
    for (int k = 0; k <= n; ++k) {
        if (k == 0) { out.push_back(poly.front()); continue; }
        if (k == n) { out.push_back(poly.back()); continue; }
        const double target = total * k / n;
        while (seg + 1 < poly.size() && s[seg] < target) ++seg;
        const double len = s[seg] - s[seg - 1];
        const double t = len > 0.0 ? (target - s[seg - 1]) / len : 0.0;
        out.push_back(poly[seg - 1] + t * (poly[seg] - poly[seg - 1]));
    }
    return out;
}

} // namespace

Mesh gen_rect(int nx, int ny, double width, double height, const SideMarkers& rule) {
    if (nx < 1 || ny < 1) throw DomainError("gen_rect: nx and ny must be >= 1");
    if (!(width > 0.0) || !(height > 0.0)) throw DomainError("gen_rect: width and height must be > 0");

    Mesh m;
    m.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) m.nodes.push_back({width * i / nx, height * j / ny});
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) add_cell(m, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));

    MarkerPainter paint(m);
    const int left = paint.side_line(rule.left, {0, 0}, {0, height});
    const int right = paint.side_line(rule.right, {width, 0}, {width, height});
    const int bottom = paint.side_line(rule.bottom, {0, 0}, {width, 0});
    const int top = paint.side_line(rule.top, {0, height}, {width, height});
    for (int j = 0; j <= ny; ++j) {
        paint.paint(id(0, j), rule.left, left);
        paint.paint(id(nx, j), rule.right, right);
    }
    for (int i = 0; i <= nx; ++i) {
        paint.paint(id(i, 0), rule.bottom, bottom);
        paint.paint(id(i, ny), rule.top, top);
    }
    return m;
}

Mesh gen_coons(std::span<const Vec2> inner, std::span<const Vec2> outer, int n_transverse,
               int n_longitudinal, const CoonsMarkers& rule, const CoonsOptions& options) {
    if (n_transverse < 1 || n_longitudinal < 1) throw DomainError("gen_coons: counts must be >= 1");
    if (inner.size() < 2 || outer.size() < 2) throw DomainError("gen_coons: polylines need >= 2 points");
    if (!(options.transverse_ratio > 0.0)) throw DomainError("gen_coons: transverse_ratio must be > 0");

    const int nl = n_longitudinal;
    const int nt = n_transverse;
    const auto c0 = resample(inner, nl);
    const auto c1 = resample(outer, nl);

    std::vector<double> v(nt + 1, 0.0);
    {
        const double q = nt > 1 ? std::pow(options.transverse_ratio, 1.0 / (nt - 1)) : 1.0;
        double t = 1.0;
        for (int j = 1; j <= nt; ++j, t *= q) v[j] = v[j - 1] + t;
        for (auto& x : v) x /= v[nt];
    }

    Mesh m;
    m.nodes.reserve(static_cast<std::size_t>(nl + 1) * (nt + 1));
    const Vec2 a00 = c0.front(), a10 = c0.back(), a01 = c1.front(), a11 = c1.back();
    for (int j = 0; j <= nt; ++j) {
        const double vj = v[j];
        for (int i = 0; i <= nl; ++i) {
            const double u = static_cast<double>(i) / nl;
            const Vec2 s0 = (1 - vj) * a00 + vj * a01;
            const Vec2 s1 = (1 - vj) * a10 + vj * a11;
            const Vec2 bilinear =
                (1 - u) * (1 - vj) * a00 + u * (1 - vj) * a10 + (1 - u) * vj * a01 + u * vj * a11;
            m.nodes.push_back((1 - vj) * c0[i] + vj * c1[i] + (1 - u) * s0 + u * s1 - bilinear);
        }
    }
    auto id = [nl](int i, int j) { return j * (nl + 1) + i; };
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < nl; ++i) add_cell(m, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));

    // Orientation follows from which side of the inner curve the outer one lies on.
    double total = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t) total += m.signed_area(t);
    if (total < 0.0) {
        for (auto& tri : m.triangles) std::swap(tri[1], tri[2]);
    }
    std::string bad;
    int nbad = 0;
    for (int t = 0; t < m.triangle_count(); ++t) {
        if (!(m.signed_area(t) > 0.0)) {
            const int cell = t / 2;
            if (nbad < 8) bad += " (" + std::to_string(cell % nl) + "," + std::to_string(cell / nl) + ")";
            ++nbad;
        }
    }
    if (nbad > 0) {
        throw ValidationError("gen_coons: degenerate patch, " + std::to_string(nbad) +
                              " triangles with non-positive area in cells" + bad +
                              (nbad > 8 ? " ..." : ""));
    }

    MarkerPainter paint(m);
    const int l_inner = paint.side_line(rule.inner, c0.front(), c0.back());
    const int l_outer = paint.side_line(rule.outer, c1.front(), c1.back());
    const int l_start = paint.side_line(rule.side_start, a00, a01);
    const int l_end = paint.side_line(rule.side_end, a10, a11);
    for (int i = 0; i <= nl; ++i) {
        paint.paint(id(i, 0), rule.inner, l_inner);
        paint.paint(id(i, nt), rule.outer, l_outer);
    }
    for (int j = 0; j <= nt; ++j) {
        paint.paint(id(0, j), rule.side_start, l_start);
        paint.paint(id(nl, j), rule.side_end, l_end);
    }
    validate(m);
    return m;
}

namespace {

bool same_line(const SymmetryLine& a, const SymmetryLine& b, double tol) {
    return std::abs(cross(a.direction, b.direction)) < 1e-12 && std::abs(cross(b.point - a.point, a.direction)) < tol;
}

} // namespace

Mesh merge_meshes(std::span<const Mesh> parts, double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("merge_meshes: tolerance must be > 0");
    Mesh out;
    // Coincident nodes are found through a grid of cells `tolerance` wide.
    std::map<std::pair<long long, long long>, std::vector<int>> grid;
    auto cell_of = [tolerance](Vec2 p) {
        return std::pair{static_cast<long long>(std::floor(p.x / tolerance)),
                         static_cast<long long>(std::floor(p.y / tolerance))};
    };
    auto find = [&](Vec2 p) {
        const auto [cx, cy] = cell_of(p);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({cx + dx, cy + dy});
                if (it == grid.end()) continue;
                for (int i : it->second)
                    if (distance(out.nodes[i], p) <= tolerance) return i;
            }
        return -1;
    };

    for (const Mesh& part : parts) {
        std::vector<int> line_map(part.symmetry_lines.size(), -1);
        for (std::size_t l = 0; l < part.symmetry_lines.size(); ++l) {
            for (std::size_t k = 0; k < out.symmetry_lines.size(); ++k)
                if (same_line(out.symmetry_lines[k], part.symmetry_lines[l], tolerance)) line_map[l] = static_cast<int>(k);
            if (line_map[l] < 0) {
                out.symmetry_lines.push_back(part.symmetry_lines[l]);
                line_map[l] = static_cast<int>(out.symmetry_lines.size()) - 1;
            }
        }
        std::vector<int> node_map(part.nodes.size());
        for (std::size_t i = 0; i < part.nodes.size(); ++i) {
            const Marker m = part.markers[i];
            const int ref = part.symmetry_ref[i] >= 0 ? line_map[part.symmetry_ref[i]] : -1;
            int j = find(part.nodes[i]);
            if (j < 0) {
                j = static_cast<int>(out.nodes.size());
                out.nodes.push_back(part.nodes[i]);
                out.markers.push_back(m);
                out.symmetry_ref.push_back(ref);
                grid[cell_of(part.nodes[i])].push_back(j);
            } else if (marker_priority(m) > marker_priority(out.markers[j])) {
                out.markers[j] = m;
                out.symmetry_ref[j] = ref;
            }
            node_map[i] = j;
        }
        for (const auto& t : part.triangles) out.triangles.push_back({node_map[t[0]], node_map[t[1]], node_map[t[2]]});
    }
    // A node shared by two patches stays on the boundary only if every copy was.
    const GeomCache cache = geom_cache(out);
    std::vector<char> on_boundary(out.nodes.size(), 0);
    for (const auto& e : cache.edges) {
        if (e.left < 0 || e.right < 0) on_boundary[e.a] = on_boundary[e.b] = 1;
    }
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        if (!on_boundary[i]) {
            out.markers[i] = Marker::Interior;
            out.symmetry_ref[i] = -1;
        }
    }
    validate(out);
    return out;
}

} // namespace burnback
