#pragma once

#include "burnback/vec2.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace burnback {

// Boundary role of a node. Numeric values are part of the text format.
enum class Marker : std::uint8_t { Interior = 0, Ignition = 1, Free = 2, Symmetry = 3 };

// Higher wins where two boundary sides meet.
int marker_priority(Marker m) noexcept;
const char* marker_name(Marker m) noexcept;

struct SymmetryLine {
    Vec2 point;
    Vec2 direction; // unit
    friend bool operator==(const SymmetryLine&, const SymmetryLine&) = default;
};

using Triangle = std::array<int, 3>;

// Triangulated propellant cross-section. Triangles are counter-clockwise.
struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<Triangle> triangles;
    std::vector<Marker> markers;
    std::vector<int> symmetry_ref; // index into symmetry_lines, -1 for non-SYMMETRY nodes
    std::vector<SymmetryLine> symmetry_lines;

    int node_count() const noexcept { return static_cast<int>(nodes.size()); }
    int triangle_count() const noexcept { return static_cast<int>(triangles.size()); }

    double signed_area(int tri) const;
    double total_area() const;
    double bbox_diagonal() const;

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

// Throws ValidationError naming the first offending triangle/node.
void validate(const Mesh& mesh);

// Text format:
//   ntri nnode nsym
//   px py dx dy                 (nsym lines)
//   x y marker [symline]        (nnode lines)
//   i0 i1 i2                    (ntri lines, 0-based, CCW)
// '#' starts a comment. Throws ParseError or ValidationError.
Mesh load_mesh(std::string_view text);
std::string save_mesh(const Mesh& mesh);

Mesh read_mesh_file(const std::string& path);
void write_mesh_file(const Mesh& mesh, const std::string& path);

// Undirected edge with its one or two incident triangles (-1 on the missing side at the boundary).
struct Edge {
    int a = 0;
    int b = 0;
    int left = -1;  // triangle containing a->b in CCW order
    int right = -1; // triangle containing b->a in CCW order
};

// Geometric quantities the explicit solver needs on every step.
struct GeomCache {
    std::vector<std::array<double, 3>> corner_angle; // per triangle, at local vertex k
    std::vector<std::array<double, 3>> altitude;     // per triangle, from local vertex k
    std::vector<Edge> edges;
    std::vector<Vec2> edge_unit;   // per edge, from a to b; n for b, -n for a
    std::vector<double> edge_length;
    std::vector<double> node_angle_sum;
    std::vector<double> node_min_height;
    // Node -> incident triangles, CSR layout.
    std::vector<int> node_tri_offset;
    std::vector<int> node_tri;

    std::span<const int> triangles_of(int node) const {
        return {node_tri.data() + node_tri_offset[node],
                node_tri.data() + node_tri_offset[node + 1]};
    }
};

GeomCache geom_cache(const Mesh& mesh);

// Closed boundary loops as node index sequences (interior on the left).
std::vector<std::vector<int>> boundary_loops(const Mesh& mesh);

struct SideMarkers {
    Marker left = Marker::Free;
    Marker right = Marker::Free;
    Marker bottom = Marker::Free;
    Marker top = Marker::Free;
};

// Structured (nx+1)x(ny+1) grid on [0,width]x[0,height]; every cell split along
// the same diagonal. SYMMETRY sides get their own symmetry line.
Mesh gen_rect(int nx, int ny, double width, double height, const SideMarkers& rule);

struct CoonsMarkers {
    Marker inner = Marker::Ignition;
    Marker outer = Marker::Free;
    Marker side_start = Marker::Symmetry; // chord inner.front() -> outer.front()
    Marker side_end = Marker::Symmetry;   // chord inner.back() -> outer.back()
};

struct CoonsOptions {
    // Ratio of the last to the first transverse cell thickness; > 1 clusters
    // nodes toward the inner boundary.
    double transverse_ratio = 1.0;
};

// Transfinite interpolation between two open polylines and the straight chords
// joining their ends. A polyline with exactly n_longitudinal + 1 points is used
// as given; otherwise it is resampled by arc length.
Mesh gen_coons(std::span<const Vec2> inner, std::span<const Vec2> outer,
               int n_transverse, int n_longitudinal, const CoonsMarkers& rule,
               const CoonsOptions& options = {});

// Union of patches sharing nodes (within `tolerance`) along common sides.
// Shared nodes keep the highest-priority marker; nodes that end up inside the
// union become INTERIOR.
Mesh merge_meshes(std::span<const Mesh> parts, double tolerance);

} // namespace burnback
