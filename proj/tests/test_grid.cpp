#include "doctest.h"

#include <cmath>

#include "vhp/grid.hpp"

using namespace vhp;

TEST_CASE("graded grid basics") {
    GridParams p;
    p.nu = 4e-3;
    HalfPlaneGrid g = make_grid(p);
    CHECK(g.y_nodes.front() == 0.0);
    CHECK(g.y_nodes.back() == doctest::Approx(60.0));
    for (std::size_t j = 1; j < g.y_nodes.size(); ++j)
        CHECK(g.y_nodes[j] > g.y_nodes[j - 1]);
    for (double w : g.y_weights) CHECK(w > 0.0);
    double sum = 0.0;
    for (double w : g.y_weights) sum += w;
    CHECK(sum == doctest::Approx(g.y_max()).epsilon(1e-12));

    // near-wall spacing matches min(sqrt(nu)/8, 0.05)
    CHECK(g.y_nodes[1] - g.y_nodes[0] == doctest::Approx(std::sqrt(p.nu) / 8.0).epsilon(1e-9));
}

TEST_CASE("quadrature integrates cubics exactly between adjacent nodes") {
    GridParams p;
    HalfPlaneGrid g = make_grid(p);
    // global cubic: the composite rule must integrate it exactly
    auto poly = [](double y) { return 1.0 + 0.5 * y - 0.03 * y * y + 0.002 * y * y * y; };
    std::vector<double> f(g.y_nodes.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = poly(g.y_nodes[j]);
    const double ymax = g.y_max();
    const double exact = ymax + 0.25 * ymax * ymax - 0.01 * std::pow(ymax, 3) +
                         0.0005 * std::pow(ymax, 4);
    CHECK(g.integrate_y(f) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("fourier wavenumber convention") {
    HalfPlaneGrid g = make_uniform_grid(80.0, 8, 1.0, 0.5);
    CHECK(g.xi(0) == 0.0);
    CHECK(g.xi(1) == doctest::Approx(1.0 / 80.0));
    CHECK(g.xi(7) == doctest::Approx(-1.0 / 80.0));
    CHECK(g.xi(4) == doctest::Approx(-4.0 / 80.0));  // k in [-N/2, N/2)
    CHECK(g.kappa_abs(1) == doctest::Approx(2.0 * kPi / 80.0));
}

TEST_CASE("cutoff plateaus and supports") {
    CutoffSet cs;
    // chi_vp: 1 inside radius 5 of (0,20), 0 outside 6
    CHECK(cs.chi_vp(0.0, 20.0) == 1.0);
    CHECK(cs.chi_vp(3.0, 24.0) == 1.0);
    CHECK(cs.chi_vp(0.0, 26.5) == 0.0);
    CHECK(cs.chi_vp(0.0, 14.5) > 0.0);
    CHECK(cs.chi_vp(0.0, 14.5) < 1.0);
    // chi_b: 1 for y<=2, 0 for y>=3
    CHECK(cs.chi_b(1.99) == 1.0);
    CHECK(cs.chi_b(3.01) == 0.0);
    // chi_m: 1 when far from the ball and off the wall
    CHECK(cs.chi_m(10.0, 5.0) == 1.0);
    CHECK(cs.chi_m(0.0, 19.0) == 0.0);
    CHECK(cs.chi_m(5.0, 0.2) == 0.0);
}

TEST_CASE("cutoffs are C2: finite-difference second derivatives stay bounded") {
    CutoffSet cs;
    const double h = 1e-4;
    double worst = 0.0;
    for (double r = 4.9; r <= 6.1; r += 0.01) {
        auto f = [&](double rr) { return cs.chi_vp(0.0, 20.0 + rr); };
        const double d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
        worst = std::max(worst, std::abs(d2));
    }
    CHECK(worst < 50.0);  // bounded second derivative across the transition
    double worst_b = 0.0;
    for (double y = 1.9; y <= 3.1; y += 0.01) {
        const double d2 = (cs.chi_b(y + h) - 2.0 * cs.chi_b(y) + cs.chi_b(y - h)) / (h * h);
        worst_b = std::max(worst_b, std::abs(d2));
    }
    CHECK(worst_b < 50.0);
}

TEST_CASE("cutoff partition covers the wall strip and the vortex ball") {
    CutoffSet cs;
    const double delta = 0.25;
    double min_sum = 2.0;
    for (double x = -30.0; x <= 30.0; x += 0.5)
        for (double y = 0.0; y <= 30.0; y += 0.125) {
            const bool in_strip = y <= 5.0 - delta;
            const bool in_ball = (Vec2(x, y) - Vec2(0, 20)).norm() <= 5.0;
            if (!in_strip && !in_ball) continue;
            const double s = cs.chi_vp(x, y) + cs.chi_m(x, y) + cs.chi_b(y);
            min_sum = std::min(min_sum, s);
        }
    CHECK(min_sum >= 1.0);
}
