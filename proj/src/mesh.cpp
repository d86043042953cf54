#include "burnback/mesh.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace burnback {

int marker_priority(Marker m) noexcept {
    switch (m) {
    case Marker::Ignition: return 3;
    case Marker::Symmetry: return 2;
    case Marker::Free: return 1;
    case Marker::Interior: return 0;
    }
    return 0;
}

const char* marker_name(Marker m) noexcept {
    switch (m) {
    case Marker::Interior: return "INTERIOR";
    case Marker::Ignition: return "IGNITION";
    case Marker::Free: return "FREE";
    case Marker::Symmetry: return "SYMMETRY";
    }
    return "?";
}

double Mesh::signed_area(int tri) const {
    const auto& t = triangles[tri];
    return 0.5 * cross(nodes[t[1]] - nodes[t[0]], nodes[t[2]] - nodes[t[0]]);
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < triangle_count(); ++t) a += signed_area(t);
    return a;
}

double Mesh::bbox_diagonal() const {
    if (nodes.empty()) return 0.0;
    Vec2 lo = nodes.front();
    Vec2 hi = nodes.front();
    for (const auto& p : nodes) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return distance(lo, hi);
}

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

} // namespace

void validate(const Mesh& m) {
    const int nn = m.node_count();
    if (static_cast<int>(m.markers.size()) != nn || static_cast<int>(m.symmetry_ref.size()) != nn) {
        throw ValidationError("per-node arrays do not match node count");
    }
    for (int t = 0; t < m.triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const int v = m.triangles[t][k];
            if (v < 0 || v >= nn) {
                throw ValidationError("triangle " + std::to_string(t) + " references missing node " +
                                      std::to_string(v));
            }
        }
        const auto& tri = m.triangles[t];
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw ValidationError("triangle " + std::to_string(t) + " repeats a node");
        }
        if (!(m.signed_area(t) > 0.0)) {
            throw ValidationError("triangle " + std::to_string(t) +
                                  " is not counter-clockwise (signed area " +
                                  std::to_string(m.signed_area(t)) + ")");
        }
    }

    for (int s = 0; s < static_cast<int>(m.symmetry_lines.size()); ++s) {
        const double len = norm(m.symmetry_lines[s].direction);
        if (std::abs(len - 1.0) > 1e-9) {
            throw ValidationError("symmetry line " + std::to_string(s) + " direction is not unit");
        }
    }

    const double tol = 1e-9 * std::max(m.bbox_diagonal(), std::numeric_limits<double>::min());
    for (int i = 0; i < nn; ++i) {
        const int ref = m.symmetry_ref[i];
        if (m.markers[i] == Marker::Symmetry) {
            if (ref < 0 || ref >= static_cast<int>(m.symmetry_lines.size())) {
                throw ValidationError("SYMMETRY node " + std::to_string(i) +
                                      " has no valid symmetry line");
            }
            const auto& line = m.symmetry_lines[ref];
            const double off = std::abs(cross(line.direction, m.nodes[i] - line.point));
            if (off > tol) {
                throw ValidationError("SYMMETRY node " + std::to_string(i) + " lies " +
                                      std::to_string(off) + " off symmetry line " +
                                      std::to_string(ref));
            }
        } else if (ref != -1) {
            throw ValidationError("node " + std::to_string(i) + " is " + marker_name(m.markers[i]) +
                                  " but references a symmetry line");
        }
    }

    std::map<EdgeKey, std::pair<int, int>> uses; // (count, same-direction count)
    for (const auto& tri : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            auto& u = uses[key(a, b)];
            ++u.first;
            if (a < b) ++u.second;
        }
    }
    for (const auto& [e, u] : uses) {
        if (u.first > 2 || (u.first == 2 && u.second != 1)) {
            throw ValidationError("edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                  " is not manifold");
        }
    }
}

GeomCache geom_cache(const Mesh& m) {
    const int nn = m.node_count();
    const int nt = m.triangle_count();
    GeomCache c;
    c.corner_angle.resize(nt);
    c.altitude.resize(nt);
    c.node_angle_sum.assign(nn, 0.0);
    c.node_min_height.assign(nn, std::numeric_limits<double>::infinity());

    for (int t = 0; t < nt; ++t) {
        const auto& tri = m.triangles[t];
        const double area2 = 2.0 * m.signed_area(t);
        for (int k = 0; k < 3; ++k) {
            const Vec2 p = m.nodes[tri[k]];
            const Vec2 e1 = m.nodes[tri[(k + 1) % 3]] - p;
            const Vec2 e2 = m.nodes[tri[(k + 2) % 3]] - p;
            c.corner_angle[t][k] = std::atan2(std::abs(cross(e1, e2)), dot(e1, e2));
            c.altitude[t][k] = area2 / norm(e2 - e1);
        }
        const double hmin = std::min({c.altitude[t][0], c.altitude[t][1], c.altitude[t][2]});
        for (int k = 0; k < 3; ++k) {
            c.node_angle_sum[tri[k]] += c.corner_angle[t][k];
            c.node_min_height[tri[k]] = std::min(c.node_min_height[tri[k]], hmin);
        }
    }

    std::map<EdgeKey, int> index;
    for (int t = 0; t < nt; ++t) {
        const auto& tri = m.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            auto [it, inserted] = index.try_emplace(key(a, b), static_cast<int>(c.edges.size()));
            if (inserted) {
                Edge e;
                e.a = std::min(a, b);
                e.b = std::max(a, b);
                c.edges.push_back(e);
            }
            Edge& e = c.edges[it->second];
            (a == e.a ? e.left : e.right) = t;
        }
    }
    // Deterministic edge order, independent of triangle order.
    std::sort(c.edges.begin(), c.edges.end(),
              [](const Edge& x, const Edge& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
    c.edge_unit.reserve(c.edges.size());
    c.edge_length.reserve(c.edges.size());
    for (const auto& e : c.edges) {
        const Vec2 d = m.nodes[e.b] - m.nodes[e.a];
        c.edge_length.push_back(norm(d));
        c.edge_unit.push_back(d / norm(d));
    }

    c.node_tri_offset.assign(nn + 1, 0);
    for (const auto& tri : m.triangles)
        for (int v : tri) ++c.node_tri_offset[v + 1];
    for (int i = 0; i < nn; ++i) c.node_tri_offset[i + 1] += c.node_tri_offset[i];
    c.node_tri.resize(c.node_tri_offset[nn]);
    std::vector<int> fill(c.node_tri_offset.begin(), c.node_tri_offset.end() - 1);
    for (int t = 0; t < nt; ++t)
        for (int v : m.triangles[t]) c.node_tri[fill[v]++] = t;
    return c;
}

std::vector<std::vector<int>> boundary_loops(const Mesh& m) {
    std::map<EdgeKey, int> count;
    for (const auto& tri : m.triangles)
        for (int k = 0; k < 3; ++k) ++count[key(tri[k], tri[(k + 1) % 3])];

    std::map<int, int> next; // boundary successor, interior on the left
    for (const auto& tri : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            if (count[key(a, b)] == 1) next[a] = b;
        }
    }

    std::vector<std::vector<int>> loops;
    while (!next.empty()) {
        std::vector<int> loop;
        int start = next.begin()->first;
        int v = start;
        do {
            loop.push_back(v);
            auto it = next.find(v);
            if (it == next.end()) throw ValidationError("open boundary at node " + std::to_string(v));
            v = it->second;
            next.erase(it);
        } while (v != start);
        loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace burnback
