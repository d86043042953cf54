#include "burnback/errors.hpp"
#include "burnback/star.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace burnback;
using std::numbers::pi;

namespace {

double deg(double rad) { return rad * 180.0 / pi; }

} // namespace

TEST_CASE("neutral residual") {
    CHECK(std::abs(star::neutral_residual(5, 2 * 31.12 * pi / 180)) < 5e-4);
    CHECK(star::neutral_residual(6, pi / 3) == doctest::Approx(pi / 2 - std::sqrt(3.0)));
    CHECK_THROWS_AS(star::neutral_residual(5, 0.0), DomainError);
}

TEST_CASE("tip angles of the neutral star") {
    CHECK(std::abs(deg(star::neutral_tip_angle(5)) - 31.12) <= 0.01);
    CHECK(std::abs(deg(star::neutral_tip_angle(6)) - 33.53) <= 0.01);
    CHECK(std::abs(deg(star::neutral_tip_angle(8)) - 37.30) <= 0.01);
    for (int n = 4; n <= 12; ++n) {
        CHECK(std::abs(star::neutral_residual(n, 2 * star::neutral_tip_angle(n))) < 1e-12);
        if (n > 4) CHECK(star::neutral_tip_angle(n) > star::neutral_tip_angle(n - 1));
    }
    CHECK(star::neutral_tip_angle(5) < pi / 5);
    CHECK(star::neutral_tip_angle(6) > pi / 6);
    CHECK_THROWS_AS(star::neutral_tip_angle(3), DomainError);
}

TEST_CASE("bipropellant design constant") {
    const auto b = star::bistar_design(4, 1.0, 0.1, 0.5);
    CHECK(b.web == doctest::Approx(0.4));
    CHECK(std::abs(b.rate_ratio - 1.592) <= 1e-3);
    CHECK(std::abs(b.r_c - (b.r_f + b.d + b.web)) < 1e-12);
    CHECK_FALSE(b.degenerate);

    const auto six = star::bistar_design(6, 1.0, 0.1, 0.5);
    CHECK(std::abs(six.rate_ratio - 1.2992) <= 1e-3);

    // The casing point on the pi/n ray satisfies the interface circle exactly.
    const double r1 = b.r_c, th = pi / b.n, r2 = b.r_f + b.rate_ratio * b.web;
    CHECK(std::abs(std::pow(r1 * std::cos(th) - b.d, 2) + std::pow(r1 * std::sin(th), 2) - r2 * r2) < 1e-12);

    const auto tiny = star::bistar_design(4, 1.0, 0.1, 1e-12);
    CHECK(std::abs(tiny.rate_ratio - 1.0) < 1e-9);
    CHECK_THROWS_AS(star::bistar_design(4, 1.0, 0.5, 0.6), DomainError);
}

TEST_CASE("interface samples") {
    const auto b = star::bistar_design(4, 1.0, 0.1, 0.5);
    const auto pts = star::bistar_interface(b, 41);
    REQUIRE(pts.size() == 41);
    CHECK(pts.front().y == 0.0);
    CHECK(std::abs(pts.front().theta1) < 1e-9);
    CHECK(std::abs(pts.back().theta1 - pi / 4) < 1e-9);
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k].theta1 > pts[k - 1].theta1);
    for (const auto& p : pts) {
        // Same point seen from the axis and from the fillet centre.
        CHECK(std::abs(p.r1 * std::sin(p.theta1) - p.r2 * std::sin(p.theta2)) < 1e-9);
        CHECK(std::abs(p.r1 * std::cos(p.theta1) - (b.d + p.r2 * std::cos(p.theta2))) < 1e-9);
    }
    CHECK(std::isnan(star::bistar_interface_angle(b, 0.2)));
    CHECK_THROWS_AS(star::bistar_interface(b, 1), DomainError);
}

TEST_CASE("equilibrium line") {
    CHECK(star::equilibrium_ratio(0.3, 0.0) == doctest::Approx(std::cos(0.6)));
    CHECK(deg(star::equilibrium_angle(pi / 4, 1.0)) == doctest::Approx(-45.0));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> beta(0.05, pi / 2 - 0.05), ratio(0.1, 3.0);
    for (int k = 0; k < 100; ++k) {
        const double b = beta(rng), q = ratio(rng);
        CHECK(std::abs(star::equilibrium_ratio(b, star::equilibrium_angle(b, q)) - q) < 1e-12);
    }
    CHECK_THROWS_AS(star::equilibrium_angle(pi / 2, 1.0), DomainError);
}

TEST_CASE("web and volumetric fractions are measured") {
    auto d = star::neutral_design(5);
    const Contour half = make_star(5, 2 * d.tip_semi_angle, 0.4, 0.45, 1.0);
    star::measure_fractions(d, half, 1.0);
    REQUIRE(d.web_fraction);
    REQUIRE(d.volumetric_fraction);
    CHECK(*d.web_fraction > 0.0);
    CHECK(*d.web_fraction < 0.5);
    CHECK(*d.volumetric_fraction > 0.0);
    CHECK(*d.volumetric_fraction < 1.0);
}
