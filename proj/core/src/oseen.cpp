#include "vhp/oseen.hpp"

#include <algorithm>
#include <cmath>

namespace vhp {

Vec2 far_image_difference(Vec2 eta, Vec2 te) {
    if (te.norm() < 2.0 * eta.norm())
        throw std::domain_error("far_image_difference: |eta_tilde| >= 2|eta| required");
    // kernel part via a common denominator: no cancellation
    const double te2 = te.norm2();
    const Vec2 sum = eta + te;
    const double sum2 = sum.norm2();
    const Vec2 kern = (eta.perp() * te2 - te.perp() * (eta.norm2() + 2.0 * eta.dot(te))) /
                      (te2 * sum2);
    // Gaussian tails, typically below underflow for the far image
    Vec2 tails(0.0, 0.0);
    const double qa = 0.25 * sum2, qb = 0.25 * te2;
    if (qa < 745.0) tails -= sum.perp() * (std::exp(-qa) / sum2);
    if (qb < 745.0) tails += te.perp() * (std::exp(-qb) / te2);
    return (kern + tails) * (1.0 / (2.0 * kPi));
}

namespace {

Vec2 x0_rhs(double alpha, double nu, double t, Vec2 X) {
    // -(alpha/sqrt(nu t)) V^G((0, 2 X_y)/sqrt(nu t)) has the bounded closed form
    // (alpha (1 - e^{-X_y^2/(nu t)}) / (4 pi X_y), 0); t -> 0 limit included.
    const double b = X.y;
    double f = 1.0;
    if (t > 0.0) {
        const double q = b * b / (nu * t);
        if (q < 700.0) f = -std::expm1(-q);
    }
    return Vec2(alpha * f / (4.0 * kPi * b), 0.0);
}

}  // namespace

VortexState VortexTrajectory::eval(double t) const {
    const auto& s = states;
    if (t <= s.front().t) return s.front();
    if (t >= s.back().t) return s.back();
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double tv, const VortexState& st) { return tv < st.t; });
    const VortexState& b = *it;
    const VortexState& a = *(it - 1);
    const double h = b.t - a.t, u = (t - a.t) / h;
    auto herm = [&](double pa, double pb, double ma, double mb) {
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * pa + (u3 - 2 * u2 + u) * h * ma +
               (-2 * u3 + 3 * u2) * pb + (u3 - u2) * h * mb;
    };
    VortexState out = a;
    out.t = t;
    out.X0.x = herm(a.X0.x, b.X0.x, a.Xdot.x, b.Xdot.x);
    out.X0.y = herm(a.X0.y, b.X0.y, a.Xdot.y, b.Xdot.y);
    // X1, X2 vary slowly; linear in between
    out.X1 = a.X1 + (b.X1 - a.X1) * u;
    out.X2 = a.X2 + (b.X2 - a.X2) * u;
    out.Xdot = a.Xdot + (b.Xdot - a.Xdot) * u;
    out.X = out.X0 + std::sqrt(out.nu) * out.X1 + out.nu * out.X2;
    return out;
}

VortexTrajectory integrate_vortex_ode(double alpha, double nu, Vec2 start, double t_end,
                                      const std::function<Vec2(double)>* C0,
                                      const std::function<Vec2(double)>* C1, double tol,
                                      int n_store) {
    require(t_end > 0.0 && nu > 0.0, "integrate_vortex_ode: need t_end, nu > 0");
    VortexTrajectory traj;
    traj.alpha = alpha;
    traj.nu = nu;

    // state vector y = (X0, X1, X2)
    struct S { Vec2 a, b, c; };
    auto rhs = [&](double t, const S& y) {
        S d;
        d.a = x0_rhs(alpha, nu, t, y.a);
        d.b = C0 ? (*C0)(t) : Vec2(0.0, 0.0);
        d.c = C1 ? (*C1)(t) : Vec2(0.0, 0.0);
        return d;
    };
    auto axpy = [](const S& y, double s, const S& d) {
        return S{y.a + d.a * s, y.b + d.b * s, y.c + d.c * s};
    };

    // one Euler step off t=0 with the bounded limit value of the right side
    const double t_start = 1e-6 * t_end;
    S y{start, Vec2(0, 0), Vec2(0, 0)};
    y = axpy(y, t_start, rhs(0.0, y));
    double t = t_start;

    const int n_out = std::max(n_store, 8);
    std::vector<double> t_out(n_out);
    for (int i = 0; i < n_out; ++i)
        t_out[i] = t_start + (t_end - t_start) * static_cast<double>(i) / (n_out - 1);
    std::size_t next_out = 0;

    auto record = [&](double tv, const S& yv) {
        VortexState st;
        st.t = tv;
        st.alpha = alpha;
        st.nu = nu;
        st.X0 = yv.a;
        st.X1 = yv.b;
        st.X2 = yv.c;
        st.X = st.X0 + std::sqrt(nu) * st.X1 + nu * st.X2;
        S d = rhs(tv, yv);
        st.Xdot = d.a + std::sqrt(nu) * d.b + nu * d.c;
        if (st.X.y <= 1.0)
            throw std::runtime_error("integrate_vortex_ode: vortex reached y <= 1");
        traj.states.push_back(st);
    };
    record(t, y);
    next_out = 1;

    // Cash-Karp embedded RK45
    static const double A2 = 0.2, A3 = 0.3, A4 = 0.6, A5 = 1.0, A6 = 0.875;
    static const double B21 = 0.2;
    static const double B31 = 3.0 / 40, B32 = 9.0 / 40;
    static const double B41 = 0.3, B42 = -0.9, B43 = 1.2;
    static const double B51 = -11.0 / 54, B52 = 2.5, B53 = -70.0 / 27, B54 = 35.0 / 27;
    static const double B61 = 1631.0 / 55296, B62 = 175.0 / 512, B63 = 575.0 / 13824,
                        B64 = 44275.0 / 110592, B65 = 253.0 / 4096;
    static const double C1c = 37.0 / 378, C3c = 250.0 / 621, C4c = 125.0 / 594,
                        C6c = 512.0 / 1771;
    static const double D1 = C1c - 2825.0 / 27648, D3 = C3c - 18575.0 / 48384,
                        D4 = C4c - 13525.0 / 55296, D5 = -277.0 / 14336, D6 = C6c - 0.25;

    double h = (t_end - t_start) / 256.0;
    const double h_min = 1e-14 * t_end;
    while (t < t_end) {
        h = std::min(h, t_end - t);
        while (next_out < t_out.size() && t_out[next_out] <= t + h && t_out[next_out] > t)
            h = t_out[next_out] - t;  // land on output times

        S k1 = rhs(t, y);
        S k2 = rhs(t + A2 * h, axpy(y, h * B21, k1));
        S y3 = axpy(axpy(y, h * B31, k1), h * B32, k2);
        S k3 = rhs(t + A3 * h, y3);
        S y4 = axpy(axpy(axpy(y, h * B41, k1), h * B42, k2), h * B43, k3);
        S k4 = rhs(t + A4 * h, y4);
        S y5 = axpy(axpy(axpy(axpy(y, h * B51, k1), h * B52, k2), h * B53, k3), h * B54, k4);
        S k5 = rhs(t + A5 * h, y5);
        S y6 = axpy(axpy(axpy(axpy(axpy(y, h * B61, k1), h * B62, k2), h * B63, k3),
                         h * B64, k4), h * B65, k5);
        S k6 = rhs(t + A6 * h, y6);

        S ynew = axpy(axpy(axpy(axpy(y, h * C1c, k1), h * C3c, k3), h * C4c, k4), h * C6c, k6);
        Vec2 ea = (k1.a * D1 + k3.a * D3 + k4.a * D4 + k5.a * D5 + k6.a * D6) * h;
        Vec2 eb = (k1.b * D1 + k3.b * D3 + k4.b * D4 + k5.b * D5 + k6.b * D6) * h;
        Vec2 ec = (k1.c * D1 + k3.c * D3 + k4.c * D4 + k5.c * D5 + k6.c * D6) * h;
        const double err = std::sqrt(ea.norm2() + eb.norm2() + ec.norm2());
        const double budget = tol * h;  // error per unit time <= tol

        if (err <= budget || h <= h_min) {
            t += h;
            y = ynew;
            if (next_out < t_out.size() && std::abs(t - t_out[next_out]) < 1e-12 * t_end) {
                record(t, y);
                ++next_out;
            }
        }
        double scale = err > 0.0 ? 0.9 * std::pow(budget / err, 0.2) : 2.0;
        h *= std::clamp(scale, 0.2, 5.0);
        if (h < h_min) {
            if (err > budget)
                throw std::runtime_error("integrate_vortex_ode: step-size underflow");
            h = h_min;
        }
    }
    if (traj.states.back().t < t_end - 1e-12 * t_end) record(t_end, y);
    return traj;
}

namespace {

// relative content of angular modes other than n, sampled on rings
double off_mode_content(const SelfSimilarField& f, int n_keep) {
    const int n_theta = 64;
    double keep = 0.0, other = 0.0;
    for (double r = 0.5; r <= 6.0; r += 0.5) {
        std::vector<double> ring(n_theta);
        for (int m = 0; m < n_theta; ++m) {
            const double th = 2.0 * kPi * m / n_theta;
            ring[m] = f.interp(r * std::cos(th), r * std::sin(th));
        }
        for (int n = 0; n < n_theta / 2; ++n) {
            double ac = 0.0, as = 0.0;
            for (int m = 0; m < n_theta; ++m) {
                const double th = 2.0 * kPi * m / n_theta;
                ac += ring[m] * std::cos(n * th);
                as += ring[m] * std::sin(n * th);
            }
            const double e = (ac * ac + as * as) * r;
            (n == n_keep ? keep : other) += e;
        }
    }
    return (keep + other) > 0.0 ? std::sqrt(other / (keep + other + 1e-300)) : 0.0;
}

}  // namespace

ResidualExpansion residual_leading(double alpha, double nu, double t, const VortexState& X,
                                   const SelfSimilarGrid& grid) {
    const double eps = std::sqrt(nu * t);
    require(eps > 0.0, "residual_leading: nu t must be positive");
    const Vec2 gap = X.X - Vec2(X.X.x, -X.X.y);  // X - X^*
    // |eta_tilde| = 2 X_y / eps >= 20/eps is the far-image regime of the lemma
    require(X.X.y >= 10.0, "residual_leading: vortex too close to the wall");

    ResidualExpansion out;
    out.A = SelfSimilarField(grid, t);
    out.B = SelfSimilarField(grid, t);

    const int n = grid.n;
    auto F = [&](double e, int i, int j) {
        const Vec2 eta(grid.node(i), grid.node(j));
        const Vec2 diff = far_image_difference(eta, gap / e);
        return -(alpha / (e * e)) * diff.dot(oseen_grad_G(eta));
    };

    std::vector<double> f1(grid.size()), f2(grid.size()), f4(grid.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            f1[grid.idx(i, j)] = F(eps, i, j);
            f2[grid.idx(i, j)] = F(eps / 2, i, j);
            f4[grid.idx(i, j)] = F(eps / 4, i, j);
        }

    double de1 = 0.0, de2 = 0.0, do1 = 0.0, do2 = 0.0;  // Richardson increments
    double rem = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int im = n - 1 - i, jm = n - 1 - j;  // eta -> -eta
            auto even = [&](const std::vector<double>& f) {
                return 0.5 * (f[grid.idx(i, j)] + f[grid.idx(im, jm)]);
            };
            auto odd = [&](const std::vector<double>& f) {
                return 0.5 * (f[grid.idx(i, j)] - f[grid.idx(im, jm)]);
            };
            const double e1 = even(f1), e2 = even(f2), e4 = even(f4);
            const double g1 = odd(f1) / eps, g2 = odd(f2) / (eps / 2), g4 = odd(f4) / (eps / 4);
            const double A = e4 + (e4 - e2) / 3.0;
            const double B = g4 + (g4 - g2) / 3.0;
            out.A.at(i, j) = A;
            out.B.at(i, j) = B;
            de1 = std::max(de1, std::abs(e1 - e2));
            de2 = std::max(de2, std::abs(e2 - e4));
            do1 = std::max(do1, std::abs(g1 - g2));
            do2 = std::max(do2, std::abs(g2 - g4));
            rem = std::max(rem, std::abs(f1[grid.idx(i, j)] - A - eps * B) / (eps * eps));
        }

    out.remainder_sup = rem;
    out.ratio_even = de1 > 0.0 ? de2 / de1 : 0.25;
    out.ratio_odd = do1 > 0.0 ? do2 / do1 : 0.25;
    if (alpha != 0.0) {
        const bool ok_e = out.ratio_even > 0.15 && out.ratio_even < 0.35;
        const bool ok_o = out.ratio_odd > 0.15 && out.ratio_odd < 0.35;
        if (!ok_e || !ok_o)
            throw std::runtime_error("residual_leading: Richardson ratio test failed");
    }
    out.mode_purity_A = off_mode_content(out.A, 2);
    out.mode_purity_B = off_mode_content(out.B, 3);
    return out;
}

}  // namespace vhp
