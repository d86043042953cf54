#pragma once

#include "burnback/contour.hpp"
#include "burnback/mesh.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace burnback::post {

struct Segment {
    Vec2 a;
    Vec2 b;
    int triangle;
};

struct Polyline {
    std::vector<Vec2> points;
    bool closed = false;
    double length() const;
};

// Level-line pieces of the linear interpolant of s at value tau, one per
// crossed triangle. Nodes exactly at tau count as burnt (below it), so tau = 0
// traces the ignition surface.
std::vector<Segment> level_segments(const Mesh& mesh, std::span<const double> s, double tau);

// Level segments chained into polylines.
std::vector<Polyline> isocontour(const Mesh& mesh, std::span<const double> s, double tau);

double perimeter(const Mesh& mesh, std::span<const double> s, double tau);

// Exact area of {s <= tau} under linear interpolation.
double port_area(const Mesh& mesh, std::span<const double> s, double tau);

// Propellant label per triangle by majority of its node labels (1 or 2).
std::vector<int> triangle_labels(const Mesh& mesh, std::span<const int> node_labels);

struct BurnCurves {
    std::vector<double> tau;
    std::vector<double> perimeter;      // P_b = P_1 + P_2
    std::vector<double> perimeter_slow; // P_1
    std::vector<double> perimeter_fast; // P_2
    std::vector<double> port_area;      // A_p
    std::vector<double> equivalent;     // A_eq = P_1 + f P_2
    std::optional<double> grain_length; // A_b = P_b L when set
};

struct CurveOptions {
    double rate_ratio = 1.0;               // f
    std::optional<double> grain_length;
    double initial_port_area = 0.0;        // added to A_p
};

// `node_labels` empty means a single propellant. Throws DomainError when tau
// is not strictly increasing or f < 1.
BurnCurves burn_curves(const Mesh& mesh, std::span<const double> s, std::span<const int> node_labels,
                       std::span<const double> tau, const CurveOptions& options = {});

struct ErrorSummary {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    int argmax = -1;
};

struct ErrorField {
    std::vector<double> error; // (s - exact) / max(exact)
    ErrorSummary summary;
};

ErrorField error_field(const Mesh& mesh, std::span<const double> s, const std::function<double(Vec2)>& exact);
ErrorField error_field(const Mesh& mesh, std::span<const double> s, const Contour& oracle);

// CSV at 12 significant digits.
std::string curves_csv(const BurnCurves& curves);
std::string field_csv(const Mesh& mesh, std::span<const double> s, std::span<const double> error = {});

struct SvgOptions {
    bool show_mesh = false;
    double width_px = 800.0;
};

// One <g class="isochrone"> group per level.
std::string isochrone_svg(const Mesh& mesh, std::span<const double> s, std::span<const double> levels,
                          const SvgOptions& options = {});
std::string contour_svg(const Contour& contour, int samples_per_piece = 64);

} // namespace burnback::post
