#include "burnback/problems.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace burnback::problems {

using std::numbers::pi;

namespace {

std::vector<Vec2> arc_points(double radius, double from, double to, int n) {
    std::vector<Vec2> out;
    for (int k = 0; k <= n; ++k) out.push_back(polar(radius, from + (to - from) * k / n));
    return out;
}

} // namespace

Problem planar_front(int cells) {
    SideMarkers rule;
    rule.left = Marker::Ignition;
    rule.right = Marker::Free;
    rule.bottom = Marker::Symmetry;
    rule.top = Marker::Symmetry;
    Problem p;
    p.name = "planar-front";
    p.mesh = gen_rect(cells, cells, 1.0, 1.0, rule);
    p.rate.assign(p.mesh.nodes.size(), 1.0);
    p.exact = [](Vec2 q) { return q.x; };
    return p;
}

Problem circle_port(double r0, double r1, int radial_cells, int angular_cells, double sector) {
    if (!(r0 > 0.0 && r1 > r0)) throw DomainError("circle_port: need 0 < r0 < r1");
    if (!(sector > 0.0 && sector <= 0.5 * pi)) throw DomainError("circle_port: sector must be in (0, pi/2]");
    CoonsMarkers rule; // inner IGNITION, outer FREE, sides SYMMETRY
    Problem p;
    p.name = "circle-port";
    p.mesh = gen_coons(arc_points(r0, 0.0, sector, angular_cells), arc_points(r1, 0.0, sector, angular_cells),
                       radial_cells, angular_cells, rule);
    p.rate.assign(p.mesh.nodes.size(), 1.0);
    p.exact = [r0](Vec2 q) { return norm(q) - r0; };
    return p;
}

Problem annulus_sector(int radial_cells, int angular_cells, double sector) {
    Problem p = circle_port(1.0, 2.0, radial_cells, angular_cells, sector);
    p.name = "annulus-sector";
    return p;
}

Contour slot_surface(const SlotGeometry& g) {
    const double r = g.half_width;
    const double l = g.straight_length;
    if (!(r > 0.0 && l > 0.0 && l + r < g.side && r < g.side)) {
        throw DomainError("slot: need 0 < half_width, 0 < straight_length and the slot inside the square");
    }
    return Contour({Piece::line({g.side, 0.0}, {r, 0.0}), Piece::line({r, 0.0}, {r, l}),
                    Piece::arc({0.0, l}, r, 0.0, 0.5 * pi, 1)});
}

Mesh slot_mesh(const SlotGeometry& g, int target_nodes) {
    slot_surface(g); // validates the geometry
    if (target_nodes < 100) throw DomainError("slot_mesh: need at least 100 nodes");
    const double r = g.half_width;
    const double l = g.straight_length;
    const double w = g.side;

    // Cell counts in the proportions 30 : 25 : 55 give 2511 nodes at k = 1.
    const double k = std::sqrt(target_nodes / 2511.0);
    const int across = std::max(2, static_cast<int>(std::lround(30 * k)));
    const int along_wall = std::max(2, static_cast<int>(std::lround(25 * k)));
    const int around_cap = std::max(2, static_cast<int>(std::lround(55 * k)));
    CoonsOptions grading;
    grading.transverse_ratio = 4.0;

    std::vector<Vec2> wall, right;
    for (int i = 0; i <= along_wall; ++i) {
        const double y = l * i / along_wall;
        wall.push_back({r, y});
        right.push_back({w, y});
    }
    CoonsMarkers beside;
    beside.inner = Marker::Ignition;
    beside.outer = Marker::Free;
    beside.side_start = Marker::Ignition; // the bore
    beside.side_end = Marker::Interior;
    const Mesh lower = gen_coons(wall, right, across, along_wall, beside, grading);

    // Rays from the cap centre to the square's top and right sides.
    const Vec2 c{0.0, l};
    std::vector<Vec2> cap, outer;
    for (int i = 0; i <= around_cap; ++i) {
        const double a = 0.5 * pi * i / around_cap;
        cap.push_back(c + polar(r, a));
        Vec2 q;
        if (i == 0) {
            q = {w, l};
        } else if (i == around_cap) {
            q = {0.0, w};
        } else {
            const Vec2 d = polar(1.0, a);
            const double t = std::min(w / d.x, (w - l) / d.y);
            q = c + t * d;
        }
        outer.push_back(q);
    }
    CoonsMarkers fan;
    fan.inner = Marker::Ignition;
    fan.outer = Marker::Free;
    fan.side_start = Marker::Interior;
    fan.side_end = Marker::Symmetry;
    const Mesh upper = gen_coons(cap, outer, across, around_cap, fan, grading);

    const Mesh parts[2] = {lower, upper};
    return merge_meshes(parts, 1e-9 * w);
}

Problem slot(int target_nodes, const SlotGeometry& g) {
    Problem p;
    p.name = "slot";
    p.mesh = slot_mesh(g, target_nodes);
    p.rate.assign(p.mesh.nodes.size(), 1.0);
    auto surface = std::make_shared<Contour>(slot_surface(g));
    p.exact = [surface](Vec2 q) { return distance(q, *surface); };
    return p;
}

Contour star_surface(const StarSetup& s) {
    const double half = star::neutral_tip_angle(s.n);
    return make_star(s.n, 2.0 * half, s.fillet_share, s.port_depth, s.casing_radius);
}

Problem star_sector(int transverse_cells, int longitudinal_cells, const StarSetup& s) {
    const Contour surface = star_surface(s);
    const double sector = pi / s.n;
    CoonsMarkers rule; // inner IGNITION, outer FREE, both rays SYMMETRY
    Problem p;
    p.name = "star-sector";
    p.mesh = gen_coons(surface.sample(longitudinal_cells),
                       arc_points(s.casing_radius, sector, 0.0, longitudinal_cells), transverse_cells,
                       longitudinal_cells, rule);
    p.rate.assign(p.mesh.nodes.size(), 1.0);
    // Inside the half sector the nearest point of the full star lies on this half.
    auto shared = std::make_shared<Contour>(surface);
    p.exact = [shared](Vec2 q) { return distance(q, *shared); };
    return p;
}

bool bistar_is_slow(const star::BiStarDesign& d, Vec2 p) {
    const double r1 = norm(p);
    if (r1 < d.r_f + d.d) return false;
    const double theta = std::atan2(p.y, p.x);
    const double limit = star::bistar_interface_angle(d, std::min(r1, d.r_c));
    return theta < limit;
}

BiStarProblem bistar_sector(const star::BiStarDesign& design, int transverse_cells, int longitudinal_cells) {
    if (design.degenerate) throw DomainError("bistar_sector: design needs rate ratio >= 1");
    const Contour surface = star::bistar_outline(design);
    const double sector = pi / design.n;
    CoonsMarkers rule;
    BiStarProblem out;
    out.design = design;
    Problem& p = out.problem;
    p.name = "bistar-sector";
    p.mesh = gen_coons(surface.sample(longitudinal_cells), arc_points(design.r_c, sector, 0.0, longitudinal_cells),
                       transverse_cells, longitudinal_cells, rule);
    out.labels.resize(p.mesh.nodes.size());
    p.rate.resize(p.mesh.nodes.size());
    for (std::size_t i = 0; i < p.mesh.nodes.size(); ++i) {
        const bool slow = bistar_is_slow(design, p.mesh.nodes[i]);
        out.labels[i] = slow ? 1 : 2;
        p.rate[i] = slow ? 1.0 : design.rate_ratio;
    }
    return out;
}

InterfaceProblem interface_case(int which, int cells, double rate_ratio) {
    if (which < 0 || which > 2) throw DomainError("interface_case: case must be 0, 1 or 2");
    if (!(rate_ratio >= 1.0)) throw DomainError("interface_case: rate ratio must be >= 1");
    SideMarkers rule;
    rule.left = Marker::Ignition;
    InterfaceProblem out;
    Problem& p = out.problem;
    p.name = "interface-" + std::to_string(which);
    p.mesh = gen_rect(cells, cells, 1.0, 1.0, rule);
    out.labels.resize(p.mesh.nodes.size());
    p.rate.resize(p.mesh.nodes.size());
    for (std::size_t i = 0; i < p.mesh.nodes.size(); ++i) {
        const Vec2 q = p.mesh.nodes[i];
        bool fast = false;
        switch (which) {
        case 0: fast = q.y > 0.5; break;
        case 1: fast = std::abs(q.y - 0.5) > 0.15 + 0.2 * q.x; break;
        case 2: fast = q.y > 0.2 + 0.6 * q.x; break;
        }
        out.labels[i] = fast ? 2 : 1;
        p.rate[i] = fast ? rate_ratio : 1.0;
    }
    return out;
}

} // namespace burnback::problems
