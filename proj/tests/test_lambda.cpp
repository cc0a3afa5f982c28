#include "doctest.h"

#include <cmath>
#include <random>

#include "vhp/lambda.hpp"

using namespace vhp;

namespace {

const LambdaSolver& solver() {
    static LambdaSolver s;
    return s;
}

RadialModeProfile random_profile(int n, unsigned seed) {
    const RadialGrid& rg = solver().grid();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    // smooth random radial content under a Gaussian envelope, ~ r^n at 0
    double c[3][2];
    for (auto& row : c)
        for (auto& v : row) v = U(rng);
    RadialModeProfile p;
    p.n = n;
    p.r_nodes = rg.r;
    p.a.resize(rg.r.size());
    p.b.resize(rg.r.size());
    for (std::size_t i = 0; i < rg.r.size(); ++i) {
        const double r = rg.r[i];
        const double rn = std::pow(std::min(r, 6.0), n);
        const double env = rn * std::exp(-r * r / 4.0);
        p.a[i] = env * (c[0][0] + c[1][0] * r + c[2][0] * r * r);
        p.b[i] = env * (c[0][1] + c[1][1] * r + c[2][1] * r * r);
    }
    return p;
}

}  // namespace

TEST_CASE("projection of radially symmetric and single-harmonic fields") {
    SelfSimilarGrid sg(12.0, 0.125);
    SelfSimilarField G(sg);
    G.fill([](double x, double y) { return oseen_G(Vec2(x, y)); });
    RadialModeProfile m0 = solver().project_mode(G, 0);
    for (std::size_t i = 0; i < m0.r_nodes.size(); ++i) {
        if (m0.r_nodes[i] > 8.0) continue;
        CHECK(m0.a[i] == doctest::Approx(std::exp(-0.25 * m0.r_nodes[i] * m0.r_nodes[i]) /
                                         (4.0 * kPi)).epsilon(2e-6));
    }
    for (int n = 1; n <= 4; ++n) {
        RadialModeProfile mn = solver().project_mode(G, n);
        CHECK(norm_Y(solver().grid(), mn) < 1e-10);
    }

    // W = eta_1 G is pure mode 1 with a_1(r) = r G(r)
    SelfSimilarField W(sg);
    W.fill([](double x, double y) { return x * oseen_G(Vec2(x, y)); });
    RadialModeProfile m1 = solver().project_mode(W, 1);
    for (std::size_t i = 0; i < m1.r_nodes.size(); i += 40) {
        const double r = m1.r_nodes[i];
        if (r > 8.0) continue;
        CHECK(m1.a[i] == doctest::Approx(r * std::exp(-0.25 * r * r) / (4.0 * kPi))
                             .epsilon(1e-4).scale(1e-3));
        CHECK(std::abs(m1.b[i]) < 1e-10);
    }
}

TEST_CASE("Parseval over angular modes") {
    SelfSimilarGrid sg(12.0, 0.125);
    SelfSimilarField W(sg);
    W.fill([](double x, double y) {
        const double r2 = x * x + y * y;
        return std::exp(-r2 / 4.0) * (0.3 + x - 0.7 * y + 0.2 * x * y + 0.1 * (x * x - y * y));
    });
    const RadialGrid& rg = solver().grid();
    double sum2 = 0.0;
    for (int n = 0; n <= 8; ++n) {
        const double nn = norm_Y(rg, solver().project_mode(W, n));
        sum2 += nn * nn;
    }
    const double total = norm_Y_polar(W, rg);
    CHECK(std::sqrt(sum2) == doctest::Approx(total).epsilon(1e-6));
}

TEST_CASE("Lambda annihilates P1 grad G") {
    const RadialGrid& rg = solver().grid();
    RadialModeProfile ker;
    ker.n = 1;
    ker.r_nodes = rg.r;
    ker.a.resize(rg.r.size());
    ker.b.assign(rg.r.size(), 0.0);
    for (std::size_t i = 0; i < rg.r.size(); ++i)
        ker.a[i] = -0.5 * rg.r[i] * std::exp(-0.25 * rg.r[i] * rg.r[i]) / (4.0 * kPi);
    RadialModeProfile out = solver().apply_lambda(ker);
    CHECK(norm_Y(rg, out) / norm_Y(rg, ker) < 1e-5);
}

TEST_CASE("Lambda is skew-adjoint and mode-preserving; apply is linear") {
    const RadialGrid& rg = solver().grid();
    for (int n : {1, 2, 3}) {
        for (unsigned seed = 0; seed < 8; ++seed) {
            RadialModeProfile w = random_profile(n, 100 * n + seed);
            RadialModeProfile Lw = solver().apply_lambda(w);
            const double skew = std::abs(inner_Y(rg, Lw, w));
            const double n2 = inner_Y(rg, w, w);
            CHECK(skew <= 1e-8 * n2);
        }
    }
    // linearity
    RadialModeProfile w1 = random_profile(2, 5), w2 = random_profile(2, 6);
    RadialModeProfile sum = w1;
    for (std::size_t i = 0; i < sum.a.size(); ++i) {
        sum.a[i] = 2.0 * w1.a[i] - 0.5 * w2.a[i];
        sum.b[i] = 2.0 * w1.b[i] - 0.5 * w2.b[i];
    }
    RadialModeProfile L1 = solver().apply_lambda(w1), L2 = solver().apply_lambda(w2),
                      Ls = solver().apply_lambda(sum);
    double worst = 0.0;
    for (std::size_t i = 0; i < sum.a.size(); ++i)
        worst = std::max(worst, std::abs(Ls.a[i] - 2.0 * L1.a[i] + 0.5 * L2.a[i]));
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(solver().apply_lambda(random_profile(0, 1)), std::invalid_argument);
}

TEST_CASE("invert recovers manufactured solutions") {
    const RadialGrid& rg = solver().grid();
    for (int n : {2, 3}) {
        RadialModeProfile w = random_profile(n, 40 + n);
        RadialModeProfile f = solver().apply_lambda(w);
        InvertReport rep;
        RadialModeProfile back = solver().invert_lambda(n, f, &rep);
        RadialModeProfile diff = back;
        for (std::size_t i = 0; i < diff.a.size(); ++i) {
            diff.a[i] -= w.a[i];
            diff.b[i] -= w.b[i];
        }
        CHECK(norm_Y(rg, diff) / norm_Y(rg, w) < 1e-5);
        CHECK(rep.residual_rel < 1e-6);
    }
    // n=1 on the orthogonal complement of the kernel
    {
        RadialModeProfile w = random_profile(1, 77);
        // project out the kernel directions first
        RadialModeProfile ka, kb;
        ka.n = kb.n = 1;
        ka.r_nodes = kb.r_nodes = rg.r;
        ka.a.resize(rg.r.size());
        ka.b.assign(rg.r.size(), 0.0);
        for (std::size_t i = 0; i < rg.r.size(); ++i)
            ka.a[i] = -0.5 * rg.r[i] * std::exp(-0.25 * rg.r[i] * rg.r[i]) / (4.0 * kPi);
        kb.b = ka.a;
        kb.a.assign(rg.r.size(), 0.0);
        const double kn2 = inner_Y(rg, ka, ka);
        const double ca = inner_Y(rg, w, ka) / kn2, cb = inner_Y(rg, w, kb) / kn2;
        for (std::size_t i = 0; i < rg.r.size(); ++i) {
            w.a[i] -= ca * ka.a[i];
            w.b[i] -= cb * kb.b[i];
        }
        RadialModeProfile f = solver().apply_lambda(w);
        InvertReport rep;
        RadialModeProfile back = solver().invert_lambda(1, f, &rep);
        RadialModeProfile diff = back;
        for (std::size_t i = 0; i < diff.a.size(); ++i) {
            diff.a[i] -= w.a[i];
            diff.b[i] -= w.b[i];
        }
        CHECK(norm_Y(rg, diff) / norm_Y(rg, w) < 1e-4);
    }
    // f = 0 -> w = 0
    {
        RadialModeProfile z;
        z.n = 2;
        z.r_nodes = rg.r;
        z.a.assign(rg.r.size(), 0.0);
        z.b.assign(rg.r.size(), 0.0);
        RadialModeProfile w0 = solver().invert_lambda(2, z);
        CHECK(norm_Y(rg, w0) == 0.0);
    }
}

TEST_CASE("mode preservation under Lambda") {
    SelfSimilarGrid sg(12.0, 0.125);
    for (int n : {1, 2, 3}) {
        RadialModeProfile w = random_profile(n, 60 + n);
        RadialModeProfile Lw = solver().apply_lambda(w);
        SelfSimilarField f = solver().to_field({Lw}, sg);
        // project onto other modes: residual must be tiny
        double off = 0.0;
        for (int m = 0; m <= 6; ++m) {
            if (m == n) continue;
            off = std::max(off, norm_Y(solver().grid(), solver().project_mode(f, m)));
        }
        const double scale = norm_Y(solver().grid(), Lw);
        CHECK(off <= 1e-8 * std::max(scale, 1e-30) + 1e-12);
    }
}

TEST_CASE("build_omega23 from manufactured mode data") {
    const double alpha = 1.2, t = 0.1;
    SelfSimilarGrid sg(12.0, 0.125);
    const RadialGrid& rg = solver().grid();

    // manufactured A in mode 2, B in mode 3, D0 in mode 2
    SelfSimilarField A(sg), B(sg), D0(sg);
    A.fill([](double x, double y) { return (x * x - y * y) * std::exp(-(x * x + y * y) / 4.0); });
    B.fill([](double x, double y) {
        return (x * x * x - 3.0 * x * y * y) * std::exp(-(x * x + y * y) / 4.0);
    });
    D0.fill([](double x, double y) { return 2.0 * x * y * std::exp(-(x * x + y * y) / 4.0); });

    Omega23 o = build_omega23(solver(), A, B, D0, alpha, t, sg);

    // alpha Lambda Omega2 + A = 0
    RadialModeProfile LW2 = solver().apply_lambda(o.w2);
    RadialModeProfile pA = solver().project_mode(A, 2);
    double worst = 0.0;
    RadialModeProfile res = LW2;
    for (std::size_t i = 0; i < res.a.size(); ++i) {
        res.a[i] = alpha * LW2.a[i] + pA.a[i];
        res.b[i] = alpha * LW2.b[i] + pA.b[i];
    }
    CHECK(norm_Y(rg, res) / norm_Y(rg, pA) < 1e-6);
    (void)worst;

    // zero total mass of both profiles
    CHECK(std::abs(integrate(o.omega2)) < 1e-8);
    CHECK(std::abs(integrate(o.omega3)) < 1e-8);

    // Gaussian envelope of Omega2 stable under refinement (Z membership)
    double c_env = 0.0;
    for (int i = 0; i < sg.n; i += 2)
        for (int j = 0; j < sg.n; j += 2) {
            const double r2 = sg.node(i) * sg.node(i) + sg.node(j) * sg.node(j);
            c_env = std::max(c_env, std::abs(o.omega2.at(i, j)) / std::exp(-0.9 * r2 / 4.0));
        }
    CHECK(c_env < 1e3);

    // velocities of zero-mass mode profiles decay at least like |eta|^{-3}
    double c3 = 0.0;
    for (double rr : {15.0, 25.0, 40.0})
        c3 = std::max(c3, rr * rr * rr * o.v2.eval(Vec2(rr * 0.6, rr * 0.8)).norm());
    CHECK(c3 < 1e4);

    // trivial inputs give zero
    SelfSimilarField Z(sg);
    Omega23 z = build_omega23(solver(), Z, Z, Z, alpha, t, sg);
    CHECK(norm_Y(rg, z.w2) == 0.0);
    CHECK(std::abs(integrate(z.omega3)) == 0.0);
}

TEST_CASE("invert . apply = identity away from the kernel (acceptance-style battery)") {
    const RadialGrid& rg = solver().grid();
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 3;
        RadialModeProfile w = random_profile(n, 1000 + trial);
        if (n == 1) {
            // strip kernel component
            RadialModeProfile ka;
            ka.n = 1;
            ka.r_nodes = rg.r;
            ka.a.resize(rg.r.size());
            ka.b.assign(rg.r.size(), 0.0);
            for (std::size_t i = 0; i < rg.r.size(); ++i)
                ka.a[i] = -0.5 * rg.r[i] * std::exp(-0.25 * rg.r[i] * rg.r[i]) / (4.0 * kPi);
            RadialModeProfile kb = ka;
            std::swap(kb.a, kb.b);
            const double kn2 = inner_Y(rg, ka, ka);
            const double ca = inner_Y(rg, w, ka) / kn2, cb = inner_Y(rg, w, kb) / kn2;
            for (std::size_t i = 0; i < rg.r.size(); ++i) {
                w.a[i] -= ca * ka.a[i];
                w.b[i] -= cb * kb.b[i];
            }
        }
        RadialModeProfile back = solver().invert_lambda(n, solver().apply_lambda(w));
        RadialModeProfile diff = back;
        for (std::size_t i = 0; i < diff.a.size(); ++i) {
            diff.a[i] -= w.a[i];
            diff.b[i] -= w.b[i];
        }
        CHECK(norm_Y(rg, diff) / norm_Y(rg, w) < 1e-5);
    }
    (void)rng;
}
