#pragma once

#include "burnback/contour.hpp"
#include "burnback/mesh.hpp"
#include "burnback/star.hpp"

#include <functional>
#include <string>
#include <vector>

namespace burnback::problems {

// A ready-to-solve setup: mesh, per-node rates, and (when known) the exact
// arrival time.
struct Problem {
    std::string name;
    Mesh mesh;
    std::vector<double> rate;
    std::function<double(Vec2)> exact; // empty when no closed form exists
};

// Unit square, left side burning, right side FREE, top/bottom SYMMETRY. s = x.
Problem planar_front(int cells);

// Annular sector R0 = 1 to R1 = 2 of opening `sector` radians, inner arc
// burning, straight sides SYMMETRY, outer arc FREE. s = r - 1.
Problem annulus_sector(int radial_cells, int angular_cells, double sector);

// Right half of a radial slot burning from a bore along y = 0. The half slot
// is the strip 0 <= x <= half_width up to y = straight_length, closed by a
// quarter-circle cap; the axis x = 0 above the cap is SYMMETRY and the top and
// right sides of the unit square are FREE.
struct SlotGeometry {
    double half_width = 0.1;
    double straight_length = 0.5;
    double side = 1.0;
};

// The burning boundary as a contour (bore, wall, cap); its distance field is
// the exact arrival time.
Contour slot_surface(const SlotGeometry& g);

// Two structured patches: a rectangle beside the wall and a fan of rays from
// the cap centre. The node count lands close to `target_nodes`.
Mesh slot_mesh(const SlotGeometry& g, int target_nodes);

Problem slot(int target_nodes, const SlotGeometry& g = {});

// Neutral five-point star (half sector) inside a unit casing. `fillet_share`
// is the fraction of the half sector spanned by the straight wall.
struct StarSetup {
    int n = 5;
    double fillet_share = 0.4;
    double port_depth = 0.45; // port radius on the symmetry ray at 0
    double casing_radius = 1.0;
};

Contour star_surface(const StarSetup& s);
Problem star_sector(int transverse_cells, int longitudinal_cells, const StarSetup& s = {});

// Circle port of radius r0 in a casing of radius r1, meshed as a sector.
Problem circle_port(double r0, double r1, int radial_cells, int angular_cells, double sector);

// Two-propellant straight star: half-sector mesh of the design, node rates
// 1 (slow) and f (fast), node labels 1/2.
struct BiStarProblem {
    Problem problem;
    star::BiStarDesign design;
    std::vector<int> labels;
};

BiStarProblem bistar_sector(const star::BiStarDesign& design, int transverse_cells, int longitudinal_cells);

// True when p (in the half sector) lies in the slow propellant.
bool bistar_is_slow(const star::BiStarDesign& design, Vec2 p);

// Propellant-interface setups on the unit square burning from the left side,
// fast propellant at rate f:
//   0: fast layer above a horizontal interface (front refracts into a corner)
//   1: slow wedge between two fast layers (fronts fold into a cusp)
//   2: fast layer behind an inclined interface
struct InterfaceProblem {
    Problem problem;
    std::vector<int> labels;
};

InterfaceProblem interface_case(int which, int cells, double rate_ratio);

} // namespace burnback::problems
