#pragma once

#include "burnback/contour.hpp"

#include <optional>
#include <vector>

namespace burnback::star {

struct StarDesign {
    int n = 0;
    double tip_semi_angle = 0.0; // radians
    std::optional<double> web_fraction;        // web / chamber diameter
    std::optional<double> volumetric_fraction; // propellant area / chamber area
};

// Perimeter slope residual of the classic star, per half sector and unit
// advance: pi/n + (pi - theta)/2 - cot(theta/2). The full-section slope is
// 2n times this value. `tip_angle` is the full angle theta.
double neutral_residual(int n, double tip_angle);

// Tip semi-angle theta/2 in (0, pi/2) for which the star burns neutrally.
// Requires n >= 4.
double neutral_tip_angle(int n);

StarDesign neutral_design(int n);

// Web and volumetric fractions of a half-sector port outline inside a casing,
// measured with the exact distance field.
void measure_fractions(StarDesign& design, const Contour& half_sector, double casing_radius);

// Two-propellant straight star: slot of fillet radius r_f whose fillet centre
// lies at distance d from the chamber axis.
struct BiStarDesign {
    int n = 0;
    double r_c = 0.0;
    double r_f = 0.0;
    double d = 0.0;
    double web = 0.0;        // r_c - r_f - d
    double rate_ratio = 1.0; // fast over slow recession rate
    bool degenerate = false; // rate_ratio < 1: a single propellant suffices
};

BiStarDesign bistar_design(int n, double r_c, double r_f, double d);

struct InterfaceSample {
    double y;      // advance of the slow propellant
    double r1;     // polar radius about the chamber axis
    double theta1;
    double r2;     // polar radius about the fillet centre
    double theta2;
};

// Propellant/propellant interface that lets both fronts reach the casing
// together, sampled uniformly in y over [0, web].
std::vector<InterfaceSample> bistar_interface(const BiStarDesign& design, int n_samples);

// Polar angle theta1 of the interface at radius r1 from the axis (NaN when r1
// is outside [r_f + d, r_c]).
double bistar_interface_angle(const BiStarDesign& design, double r1);

// Half-sector port outline of the design (wall + fillet), oriented like make_star.
Contour bistar_outline(const BiStarDesign& design);

// Angle of the equilibrium line for an interface between fronts meeting at
// angle 2*beta with advance ratio y1/y2. Inverse of
//   y1/y2 = cos(2 beta) - sin(2 beta) tan(delta).
double equilibrium_angle(double beta, double rate_ratio);
double equilibrium_ratio(double beta, double delta);

} // namespace burnback::star
