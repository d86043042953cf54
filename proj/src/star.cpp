#include "burnback/star.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace burnback::star {

using std::numbers::pi;

double neutral_residual(int n, double tip_angle) {
    if (n < 1) throw DomainError("neutral_residual: n must be positive");
    const double half = 0.5 * tip_angle;
    if (!(half > 0.0 && half < 0.5 * pi)) {
        throw DomainError("neutral_residual: tip angle must be in (0, pi)");
    }
    return pi / n + 0.5 * (pi - tip_angle) - 1.0 / std::tan(half);
}

double neutral_tip_angle(int n) {
    if (n < 4) throw DomainError("neutral_tip_angle: n must be >= 4 (tips collide below that)");
    auto residual = [n](double half) { return neutral_residual(n, 2.0 * half); };
    // residual -> -inf as half -> 0 and equals pi/n at half = pi/2; it is increasing.
    double lo = 1e-6;
    double hi = 0.5 * pi - 1e-12;
    if (!(residual(lo) < 0.0 && residual(hi) > 0.0)) {
        throw DomainError("neutral_tip_angle: no sign change in bracket for n = " + std::to_string(n));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    double half = 0.5 * (lo + hi);
    for (int it = 0; it < 20; ++it) {
        const double r = residual(half);
        if (std::abs(r) < 1e-15) break;
        const double s = std::sin(half);
        const double slope = -1.0 + 1.0 / (s * s); // d residual / d half
        const double next = half - r / slope;
        if (!(next > lo && next < hi)) break;
        half = next;
    }
    return half;
}

StarDesign neutral_design(int n) {
    StarDesign d;
    d.n = n;
    d.tip_semi_angle = neutral_tip_angle(n);
    return d;
}

namespace {

// Signed value of  (1/2) * integral of (x dy - y dx)  along the contour.
double swept_area(const Contour& c) {
    double a = 0.0;
    for (const auto& p : c.pieces()) {
        if (p.kind == Piece::Kind::Line) {
            a += 0.5 * cross(p.p0, p.p1);
        } else {
            const double r = p.radius;
            a += 0.5 * (r * r * (p.a1 - p.a0) +
                        r * (p.center.x * (std::sin(p.a1) - std::sin(p.a0)) -
                             p.center.y * (std::cos(p.a1) - std::cos(p.a0))));
        }
    }
    return a;
}

} // namespace

void measure_fractions(StarDesign& design, const Contour& half_sector, double casing_radius) {
    const int n = design.n;
    const int samples = 4096;
    double web = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= samples; ++k) {
        const double a = pi / n * k / samples;
        web = std::min(web, distance(polar(casing_radius, a), half_sector));
    }
    design.web_fraction = web / (2.0 * casing_radius);
    const double port = 2.0 * n * std::abs(swept_area(half_sector));
    design.volumetric_fraction = 1.0 - port / (pi * casing_radius * casing_radius);
}

BiStarDesign bistar_design(int n, double r_c, double r_f, double d) {
    if (n < 2) throw DomainError("bistar_design: n must be >= 2");
    if (!(r_f > 0.0) || !(d > 0.0)) throw DomainError("bistar_design: r_f and d must be > 0");
    BiStarDesign b;
    b.n = n;
    b.r_c = r_c;
    b.r_f = r_f;
    b.d = d;
    b.web = r_c - r_f - d;
    if (!(b.web > 0.0)) throw DomainError("bistar_design: web r_c - r_f - d must be > 0");
    const double reach = std::sqrt(r_c * r_c - 2.0 * r_c * d * std::cos(pi / n) + d * d);
    b.rate_ratio = (reach - r_f) / b.web;
    b.degenerate = b.rate_ratio < 1.0;
    return b;
}

double bistar_interface_angle(const BiStarDesign& b, double r1) {
    const double y = r1 - b.r_f - b.d;
    if (y < 0.0 || r1 > b.r_c) return std::numeric_limits<double>::quiet_NaN();
    const double r2 = b.r_f + b.rate_ratio * y;
    const double c = (r1 * r1 + b.d * b.d - r2 * r2) / (2.0 * r1 * b.d);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<InterfaceSample> bistar_interface(const BiStarDesign& b, int n_samples) {
    if (n_samples < 2) throw DomainError("bistar_interface: need at least 2 samples");
    std::vector<InterfaceSample> out;
    out.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double y = k == n_samples - 1 ? b.web : b.web * k / (n_samples - 1);
        const double r1 = b.r_f + b.d + y;
        const double r2 = b.r_f + b.rate_ratio * y;
        const double c = (r1 * r1 + b.d * b.d - r2 * r2) / (2.0 * r1 * b.d);
        if (std::abs(c) > 1.0 + 1e-12) {
            throw DomainError("bistar_interface: inconsistent design, |cos theta1| = " + std::to_string(c) +
                              " at y = " + std::to_string(y));
        }
        const double theta1 = std::acos(std::clamp(c, -1.0, 1.0));
        const double theta2 = std::atan2(r1 * std::sin(theta1), r1 * std::cos(theta1) - b.d);
        out.push_back({y, r1, theta1, r2, theta2});
    }
    return out;
}

Contour bistar_outline(const BiStarDesign& b) {
    const double vx = b.r_f / std::tan(pi / b.n);
    if (!(vx < b.d)) throw DomainError("bistar_outline: slot wall does not fit before the fillet");
    return Contour({Piece::line({vx, b.r_f}, {b.d, b.r_f}), Piece::arc({b.d, 0.0}, b.r_f, 0.5 * pi, 0.0, -1)});
}

double equilibrium_angle(double beta, double rate_ratio) {
    const double s = std::sin(2.0 * beta);
    if (!(beta > 0.0 && beta < 0.5 * pi) || s == 0.0) {
        throw DomainError("equilibrium_angle: beta must be in (0, pi/2)");
    }
    return std::atan((std::cos(2.0 * beta) - rate_ratio) / s);
}

double equilibrium_ratio(double beta, double delta) {
    return std::cos(2.0 * beta) - std::sin(2.0 * beta) * std::tan(delta);
}

} // namespace burnback::star
