#include "doctest.h"

#include <cmath>

#include "vhp/lambda.hpp"
#include "vhp/oseen.hpp"
#include "vhp/selfsim.hpp"

using namespace vhp;

TEST_CASE("Oseen profile values") {
    CHECK(oseen_G(Vec2(0, 0)) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
    const Vec2 v0 = oseen_VG(Vec2(0, 0));
    CHECK(v0.x == 0.0);
    CHECK(v0.y == 0.0);
    const Vec2 v2 = oseen_VG(Vec2(2.0, 0.0));
    CHECK(v2.x == doctest::Approx(0.0));
    CHECK(v2.y == doctest::Approx((1.0 - std::exp(-1.0)) / (4.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("Oseen exactness: L G = 0 and V^G . grad G = 0 on the grid") {
    SelfSimilarGrid sg(12.0, 0.125);
    SelfSimilarField G(sg);
    G.fill([](double x, double y) { return oseen_G(Vec2(x, y)); });
    SelfSimilarField LG = apply_oseen_L(G);
    double worst = 0.0;
    for (int i = 2; i < sg.n - 2; ++i)
        for (int j = 2; j < sg.n - 2; ++j) worst = std::max(worst, std::abs(LG.at(i, j)));
    CHECK(worst < 1e-6);

    double worst2 = 0.0;
    for (int i = 0; i < sg.n; i += 2)
        for (int j = 0; j < sg.n; j += 2) {
            const Vec2 eta(sg.node(i), sg.node(j));
            worst2 = std::max(worst2, std::abs(oseen_VG(eta).dot(oseen_grad_G(eta))));
        }
    CHECK(worst2 < 1e-15);  // exactly perpendicular

    // mass of G
    CHECK(integrate(G) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("far image difference is small and antisymmetric at leading order") {
    const double nu = 4e-3, t = 0.1;
    const Vec2 te(0.0, 40.0 / std::sqrt(nu * t));
    CHECK(far_image_difference(Vec2(0, 0), te).norm() == 0.0);
    double cmax = 0.0;
    for (Vec2 eta : {Vec2(1, 0), Vec2(0, 2), Vec2(-3, 1), Vec2(4, 4)}) {
        const Vec2 d = far_image_difference(eta, te);
        cmax = std::max(cmax, d.norm() / (nu * t * (1.0 + eta.norm())));
        // linear part odd under eta -> -eta
        const Vec2 dm = far_image_difference(eta * (-1.0), te);
        const double sym = (d + dm).norm();
        CHECK(sym <= 20.0 * nu * t * d.norm());  // quadratic remainder only
    }
    CHECK(cmax < 1.0);  // |V^G(eta+te) - V^G(te)| <= C nu t <eta> with modest C
    CHECK_THROWS_AS(far_image_difference(Vec2(1.0, 0.0), Vec2(0.0, 1.5)), std::domain_error);
}

TEST_CASE("far image constant is stable under grid refinement") {
    const Vec2 X(0.0, 20.0);
    auto fitC = [&](double nut) {
        const Vec2 te = Vec2(0.0, 2.0 * X.y) / std::sqrt(nut);
        double c = 0.0;
        for (double r = 0.5; r <= 6.0; r += 0.25)
            for (double th = 0.0; th < 6.0; th += 0.5) {
                const Vec2 eta(r * std::cos(th), r * std::sin(th));
                c = std::max(c, far_image_difference(eta, te).norm() / (nut * (1.0 + eta.norm())));
            }
        return c;
    };
    const double c1 = fitC(4e-4), c2 = fitC(1e-4);
    CHECK(std::abs(c1 - c2) / c1 < 0.2);
}

TEST_CASE("vortex ODE: alpha = 0 stays put") {
    VortexTrajectory tr = integrate_vortex_ode(0.0, 4e-3, Vec2(0, 20), 0.2);
    for (const auto& s : tr.states) {
        CHECK(s.X.x == doctest::Approx(0.0));
        CHECK(s.X.y == doctest::Approx(20.0));
    }
}

TEST_CASE("vortex ODE drift matches Z(t) and stays bounded") {
    const double alpha = 1.0, nu = 4e-3, T = 0.2, y0 = 20.0;
    VortexTrajectory tr = integrate_vortex_ode(alpha, nu, Vec2(0, y0), T);
    const VortexState end = tr.eval(T);
    // leading-order drift alpha t / (4 pi y0), vertical fixed
    CHECK(end.X0.x == doctest::Approx(alpha * T / (4.0 * kPi * y0)).epsilon(1e-6));
    CHECK(end.X0.y == doctest::Approx(y0).epsilon(1e-12));
    // |X'| bounded, |X - X0| <= C t
    for (const auto& s : tr.states) {
        CHECK(s.Xdot.norm() <= 2.0 * std::abs(alpha) / (4.0 * kPi * y0) + 1e-12);
        CHECK((s.X - Vec2(0, y0)).norm() <= 2.0 * std::abs(alpha) / (4.0 * kPi * y0) * s.t + 1e-12);
    }
    // expansion invariant X = X0 + sqrt(nu) X1 + nu X2
    for (const auto& s : tr.states) {
        const Vec2 rec = s.X0 + std::sqrt(nu) * s.X1 + nu * s.X2;
        CHECK((s.X - rec).norm() < 1e-14);
    }
}

TEST_CASE("vortex ODE with forcing integrates X1, X2") {
    std::function<Vec2(double)> C0 = [](double t) { return Vec2(std::cos(t), 0.5); };
    std::function<Vec2(double)> C1 = [](double t) { return Vec2(0.0, t); };
    VortexTrajectory tr = integrate_vortex_ode(0.0, 1e-3, Vec2(0, 20), 1.0, &C0, &C1, 1e-12);
    const VortexState end = tr.eval(1.0);
    CHECK(end.X1.x == doctest::Approx(std::sin(1.0)).epsilon(1e-9));
    CHECK(end.X1.y == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(end.X2.y == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("trajectory consistency under tolerance halving") {
    VortexTrajectory a = integrate_vortex_ode(1.0, 4e-3, Vec2(0, 20), 0.2, nullptr, nullptr, 1e-10);
    VortexTrajectory b = integrate_vortex_ode(1.0, 4e-3, Vec2(0, 20), 0.2, nullptr, nullptr, 5e-11);
    CHECK((a.eval(0.2).X - b.eval(0.2).X).norm() < 1e-8);
}

TEST_CASE("leading residual expansion: A mode 2, B mode 3, Gaussian envelopes") {
    const double alpha = 1.0, nu = 4e-3, t = 0.1;
    VortexTrajectory tr = integrate_vortex_ode(alpha, nu, Vec2(0, 20), 0.2);
    SelfSimilarGrid sg(12.0, 0.125);
    ResidualExpansion re = residual_leading(alpha, nu, t, tr.eval(t), sg);

    CHECK(re.ratio_even == doctest::Approx(0.25).epsilon(0.35));
    CHECK(re.ratio_odd == doctest::Approx(0.25).epsilon(0.35));
    CHECK(re.mode_purity_A < 1e-4);
    CHECK(re.mode_purity_B < 1e-4);

    // Gaussian envelope |A|,|B| <= C e^{-0.9 |eta|^2/4}
    double cA = 0.0, cB = 0.0;
    for (int i = 0; i < sg.n; i += 2)
        for (int j = 0; j < sg.n; j += 2) {
            const double r2 = sg.node(i) * sg.node(i) + sg.node(j) * sg.node(j);
            const double env = std::exp(-0.9 * r2 / 4.0);
            cA = std::max(cA, std::abs(re.A.at(i, j)) / env);
            cB = std::max(cB, std::abs(re.B.at(i, j)) / env);
        }
    CHECK(cA < 1.0);
    CHECK(cB < 1.0);
    CHECK(cA > 1e-5);  // nontrivial
}

TEST_CASE("leading residual: alpha = 0 gives zero") {
    VortexTrajectory tr = integrate_vortex_ode(0.0, 4e-3, Vec2(0, 20), 0.2);
    SelfSimilarGrid sg(6.0, 0.25);
    ResidualExpansion re = residual_leading(0.0, 4e-3, 0.1, tr.eval(0.1), sg);
    for (double v : re.A.values) CHECK(v == 0.0);
    for (double v : re.B.values) CHECK(v == 0.0);
}
