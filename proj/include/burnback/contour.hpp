#pragma once

#include "burnback/vec2.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace burnback {

// One piece of an initial burning surface: a segment or a circular arc.
// Arcs run from `a0` to `a1`; `sweep` is +1 (counter-clockwise) or -1 and
// must agree with the sign of a1 - a0.
struct Piece {
    enum class Kind { Line, Arc };

    Kind kind = Kind::Line;
    Vec2 p0;
    Vec2 p1;
    Vec2 center;
    double radius = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
    int sweep = 1;

    static Piece line(Vec2 from, Vec2 to);
    static Piece arc(Vec2 center, double radius, double a0, double a1, int sweep);

    Vec2 start() const;
    Vec2 end() const;
    double length() const;
    // t in [0,1], proportional to arc length.
    Vec2 point_at(double t) const;
    // Unit tangent in traversal direction at parameter t.
    Vec2 tangent_at(double t) const;
    double distance_to(Vec2 p) const;
};

// Ordered chain of pieces; the propellant lies to the left of the traversal.
class Contour {
public:
    Contour() = default;
    // Throws DomainError if consecutive pieces do not share endpoints.
    explicit Contour(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    bool closed() const noexcept { return closed_; }
    double length() const;
    Vec2 start() const { return pieces_.front().start(); }
    Vec2 end() const { return pieces_.back().end(); }

    // n+1 points at equal arc-length spacing, exactly on the contour.
    std::vector<Vec2> sample(int n) const;
    // Point at arc-length fraction t in [0,1].
    Vec2 point_at(double t) const;

    Contour reflected(Vec2 line_point, Vec2 line_direction) const;
    Contour rotated(double angle) const;
    Contour reversed() const;

private:
    std::vector<Piece> pieces_;
    bool closed_ = false;
};

inline constexpr double kJoinTolerance = 1e-9;

// Circle of given radius about the origin, traversed clockwise so that the
// material lies outside (a port burning outward).
Contour make_circle(double radius);

// Half-width `cap_radius` slot along +y from the origin: left wall up,
// semicircular cap over the top, right wall down. Cap tip at
// (0, straight_length + cap_radius).
Contour make_slot(double straight_length, double cap_radius);

// Half-sector (angle pi/n) outline of a star port. The propellant tip of full
// angle `tip_angle` sits on the ray at pi/n; its wall runs toward the ray at 0
// and joins a tangent fillet arc centred on that ray. `eps` is the fraction of
// the half sector spanned by the wall; eps == 1 gives a sharp port point and
// needs tip_angle/2 > pi/n. The port reaches radius `valley_depth` on the ray
// at 0. Traversal runs from the pi/n ray to the 0 ray.
Contour make_star(int n, double tip_angle, double eps, double valley_depth, double casing_radius);

// Full closed contour from a half-sector outline by reflection and rotation.
Contour star_full(const Contour& half_sector, int n);

// Exact minimum Euclidean distance from p to the contour pieces.
double distance(Vec2 p, const Contour& contour);

struct FeatureKind {
    enum class Kind { Regular, Corner, Cusp };
    Kind kind = Kind::Regular;
    double dphi = 0.0; // turning angle for Corner/Cusp, radians
};

// Perimeter growth rate dP/dy contributed by a contour feature.
double feature_rate(const FeatureKind& feature);

// Perimeter jump when a front of length `front_length` collides head on after
// travelling `semi_thickness`.
double collision_drop(double front_length, double semi_thickness, double y);

struct CylinderState {
    double perimeter;
    double port_area;
};

// Perimeter and port area of a regular convex section after advancing y.
CylinderState cylinder_laws(double perimeter0, double port_area0, double y);

// Text form: one piece per line, "L x0 y0 x1 y1" or "A cx cy r a0 a1 s".
Contour parse_contour(std::string_view text);
std::string format_contour(const Contour& contour);

} // namespace burnback
