#include "burnback/errors.hpp"
#include "burnback/mesh.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace burnback;
using std::numbers::pi;

namespace {

const char* kSquare = R"(# unit square, two triangles
2 4 0
0 0 1
1 0 2
1 1 2
0 1 1
0 1 2
0 2 3
)";

std::vector<Vec2> arc(double r, int n) {
    std::vector<Vec2> out;
    for (int k = 0; k <= n; ++k) out.push_back(polar(r, 0.5 * pi * k / n));
    return out;
}

} // namespace

TEST_CASE("load_mesh reads the unit square") {
    const Mesh m = load_mesh(kSquare);
    CHECK(m.node_count() == 4);
    CHECK(m.triangle_count() == 2);
    CHECK(m.signed_area(0) == doctest::Approx(0.5));
    CHECK(m.signed_area(1) == doctest::Approx(0.5));
    CHECK(m.markers[0] == Marker::Ignition);
    CHECK(m.markers[1] == Marker::Free);
}

TEST_CASE("save_mesh writes counts first and round-trips") {
    const Mesh m = load_mesh(kSquare);
    const std::string text = save_mesh(m);
    CHECK(text.rfind("2 4", 0) == 0);
    CHECK(load_mesh(text) == m);

    SideMarkers rule;
    rule.left = Marker::Ignition;
    rule.bottom = Marker::Symmetry;
    const Mesh g = gen_rect(7, 5, 2.0, 1.5, rule);
    CHECK(load_mesh(save_mesh(g)) == g);
}

TEST_CASE("one symmetry line gives one symmetry record") {
    SideMarkers rule;
    rule.left = Marker::Ignition;
    rule.bottom = Marker::Symmetry;
    const Mesh g = gen_rect(2, 2, 1.0, 1.0, rule);
    REQUIRE(g.symmetry_lines.size() == 1);
    const std::string text = save_mesh(g);
    const auto first_nl = text.find('\n');
    CHECK(text.substr(0, first_nl) == "8 9 1");
}

TEST_CASE("clockwise triangle is rejected with its index") {
    const std::string bad = "2 4 0\n0 0 1\n1 0 2\n1 1 2\n0 1 1\n0 1 2\n0 3 2\n";
    try {
        load_mesh(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("triangle 1") != std::string::npos);
    }
}

TEST_CASE("malformed text reports the line") {
    const std::string bad = "2 4 0\n0 0 1\n1 zero 2\n1 1 2\n0 1 1\n0 1 2\n0 2 3\n";
    try {
        load_mesh(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(load_mesh("2 4 0\n0 0 1\n"), ParseError);
}

TEST_CASE("gen_rect counts") {
    SideMarkers rule;
    rule.left = Marker::Ignition;
    const Mesh one = gen_rect(1, 1, 1.0, 1.0, rule);
    CHECK(one.node_count() == 4);
    CHECK(one.triangle_count() == 2);
    CHECK(one.total_area() == doctest::Approx(1.0));

    const Mesh m = gen_rect(50, 25, 1.0, 1.0, rule);
    CHECK(m.node_count() == 1326);
    CHECK(m.triangle_count() == 2500);
    CHECK(std::count(m.markers.begin(), m.markers.end(), Marker::Ignition) == 26);
    CHECK_THROWS_AS(gen_rect(0, 3, 1.0, 1.0, rule), DomainError);
}

TEST_CASE("gen_coons annulus sector") {
    const Mesh m = gen_coons(arc(1.0, 8), arc(2.0, 8), 8, 8, CoonsMarkers{});
    CHECK(m.node_count() == 81);
    for (int t = 0; t < m.triangle_count(); ++t) CHECK(m.signed_area(t) > 0.0);
    CHECK(m.total_area() == doctest::Approx(3.0 * pi / 4.0).epsilon(0.01));
    CHECK(m.symmetry_lines.size() == 2);
}

TEST_CASE("gen_coons rejects a degenerate patch") {
    const auto a = arc(1.0, 8);
    CHECK_THROWS(gen_coons(a, a, 4, 8, CoonsMarkers{}));
}

TEST_CASE("gen_coons between parallel segments matches gen_rect") {
    const std::vector<Vec2> inner{{0.0, 0.0}, {0.0, 1.0}};
    const std::vector<Vec2> outer{{2.0, 0.0}, {2.0, 1.0}};
    const Mesh c = gen_coons(inner, outer, 4, 3, CoonsMarkers{});
    SideMarkers rule;
    rule.left = Marker::Ignition;
    rule.right = Marker::Free;
    rule.bottom = Marker::Symmetry;
    rule.top = Marker::Symmetry;
    const Mesh r = gen_rect(4, 3, 2.0, 1.0, rule);
    REQUIRE(c.node_count() == r.node_count());
    REQUIRE(c.triangle_count() == r.triangle_count());
    // Same node set, same markers at each location.
    for (int i = 0; i < c.node_count(); ++i) {
        const Vec2 q = c.nodes[i];
        const auto hit = std::find_if(r.nodes.begin(), r.nodes.end(),
                                      [q](Vec2 p) { return distance(p, q) < 1e-12; });
        REQUIRE(hit != r.nodes.end());
        CHECK(r.markers[hit - r.nodes.begin()] == c.markers[i]);
    }
    CHECK(c.total_area() == doctest::Approx(r.total_area()));
}

TEST_CASE("geom_cache angles and heights") {
    Mesh tri;
    tri.nodes = {{0, 0}, {1, 0}, {0, 1}};
    tri.triangles = {{0, 1, 2}};
    tri.markers = {Marker::Ignition, Marker::Free, Marker::Free};
    tri.symmetry_ref = {-1, -1, -1};
    const GeomCache c = geom_cache(tri);
    CHECK(c.corner_angle[0][0] == doctest::Approx(pi / 2));
    CHECK(c.corner_angle[0][1] == doctest::Approx(pi / 4));
    CHECK(c.corner_angle[0][2] == doctest::Approx(pi / 4));
    CHECK(c.edges.size() == 3);

    Mesh eq;
    eq.nodes = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    eq.triangles = {{0, 1, 2}};
    eq.markers = {Marker::Ignition, Marker::Free, Marker::Free};
    eq.symmetry_ref = {-1, -1, -1};
    const GeomCache e = geom_cache(eq);
    for (double h : e.node_min_height) CHECK(h == doctest::Approx(std::sqrt(3.0) / 2));

    SideMarkers rule;
    rule.left = Marker::Ignition;
    const Mesh g = gen_rect(6, 6, 1.0, 1.0, rule);
    const GeomCache gc = geom_cache(g);
    for (int i = 0; i < g.node_count(); ++i) {
        if (g.markers[i] == Marker::Interior) CHECK(std::abs(gc.node_angle_sum[i] - 2 * pi) < 1e-9);
    }
}

TEST_CASE("boundary_loops of a rectangle is one loop over all boundary nodes") {
    SideMarkers rule;
    rule.left = Marker::Ignition;
    const Mesh g = gen_rect(5, 4, 1.0, 1.0, rule);
    const auto loops = boundary_loops(g);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].size() == 18);
}

TEST_CASE("merge_meshes joins two patches along a shared side") {
    SideMarkers a_rule;
    a_rule.left = Marker::Ignition;
    a_rule.right = Marker::Free;
    const Mesh a = gen_rect(3, 3, 1.0, 1.0, a_rule);
    Mesh b = gen_rect(3, 3, 1.0, 1.0, SideMarkers{});
    for (auto& q : b.nodes) q.x += 1.0;
    const Mesh parts[2] = {a, b};
    const Mesh m = merge_meshes(parts, 1e-9);
    CHECK(m.node_count() == 28);
    CHECK(m.triangle_count() == 36);
    CHECK(m.total_area() == doctest::Approx(2.0));
    // The shared side x = 1 ends up inside, apart from its two end nodes.
    int inside = 0;
    for (int i = 0; i < m.node_count(); ++i)
        if (std::abs(m.nodes[i].x - 1.0) < 1e-12 && m.markers[i] == Marker::Interior) ++inside;
    CHECK(inside == 2);
    CHECK(boundary_loops(m).size() == 1);
}
