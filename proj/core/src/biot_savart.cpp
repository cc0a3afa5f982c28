#include "vhp/biot_savart.hpp"

#include <algorithm>
#include <cmath>

namespace vhp {

namespace detail {

void exp_moments(double k, double h, double& E0, double& E1) {
    const double x = k * h;
    if (x < 1e-2) {
        E0 = h * (1.0 + x * (-1.0 / 2 + x * (1.0 / 6 + x * (-1.0 / 24 + x * (1.0 / 120 - x / 720)))));
        E1 = h * h *
             (0.5 + x * (-1.0 / 3 + x * (1.0 / 8 + x * (-1.0 / 30 + x * (1.0 / 144 - x / 840)))));
        return;
    }
    E0 = -std::expm1(-x) / k;
    E1 = (E0 - h * std::exp(-x)) / k;
}

namespace {

// primitive for the u-component kernel -u2/|u|^2 (valid for u2 of one sign)
double Fx(double u1, double u2) {
    double t1 = (u2 == 0.0) ? 0.0 : -u2 * std::atan(u1 / u2);
    double r2 = u1 * u1 + u2 * u2;
    double t2 = (u1 == 0.0 || r2 == 0.0) ? 0.0 : -0.5 * u1 * std::log(r2);
    return t1 + t2;
}

// primitive for the v-component kernel u1/|u|^2 (valid for u1 of one sign)
double Fy(double u1, double u2) {
    double t1 = (u1 == 0.0) ? 0.0 : u1 * std::atan(u2 / u1);
    double r2 = u1 * u1 + u2 * u2;
    double t2 = (u2 == 0.0 || r2 == 0.0) ? 0.0 : 0.5 * u2 * std::log(r2);
    return t1 + t2;
}

double box_diff(double (*F)(double, double), double a, double b, double c, double d) {
    return F(b, d) - F(a, d) - F(b, c) + F(a, c);
}

}  // namespace

Vec2 kernel_box_integral(double a, double b, double c, double d) {
    // split whenever a zero line crosses the box; the primitives are only
    // C^1 away from their respective axis
    if (a < 0.0 && b > 0.0)
        return kernel_box_integral(a, 0.0, c, d) + kernel_box_integral(0.0, b, c, d);
    if (c < 0.0 && d > 0.0)
        return kernel_box_integral(a, b, c, 0.0) + kernel_box_integral(a, b, 0.0, d);
    const double s = 1.0 / (2.0 * kPi);
    return Vec2(s * box_diff(Fx, a, b, c, d), s * box_diff(Fy, a, b, c, d));
}

}  // namespace detail

namespace {

void check_profile(const HalfPlaneGrid& g, const complexd* w, int k) {
    double peak = 0.0;
    for (int j = 0; j < g.n_y(); ++j) {
        const double a = std::abs(w[j]);
        if (std::isnan(a)) throw std::domain_error("bs_halfplane: NaN in vorticity");
        peak = std::max(peak, a);
    }
    if (peak > 0.0 && std::abs(w[g.n_y() - 1]) > 1e-10 * peak && k != 0)
        throw std::domain_error("bs_halfplane: vorticity does not decay at y_max");
}

}  // namespace

VelocityField bs_halfplane(const SpectralField& omega) {
    const HalfPlaneGrid& g = omega.grid;
    const int ny = g.n_y();
    VelocityField out;
    out.u = SpectralField(g, omega.reality);
    out.v = SpectralField(g, omega.reality);
    out.dv_dy = SpectralField(g, omega.reality);

    std::vector<double> E0(ny - 1), E1(ny - 1), edec(ny - 1);

    for (int k = 0; k < g.N_x; ++k) {
        const complexd* w = omega.mode(k);
        check_profile(g, w, k);
        complexd* u = out.u.mode(k);
        complexd* v = out.v.mode(k);
        complexd* dv = out.dv_dy.mode(k);

        if (g.mode_number(k) == 0) {
            // u_0' = -omega_0, gauge u_0(y_max) = 0
            u[ny - 1] = complexd(0.0, 0.0);
            for (int j = ny - 2; j >= 0; --j) {
                const double h = g.y_nodes[j + 1] - g.y_nodes[j];
                u[j] = u[j + 1] + 0.5 * h * (w[j] + w[j + 1]);
            }
            for (int j = 0; j < ny; ++j) { v[j] = complexd(0.0); dv[j] = complexd(0.0); }
            continue;
        }

        const double kap = g.kappa_abs(k);
        const double sgn = g.kappa_signed(k) > 0 ? 1.0 : -1.0;
        for (int j = 0; j + 1 < ny; ++j) {
            const double h = g.y_nodes[j + 1] - g.y_nodes[j];
            detail::exp_moments(kap, h, E0[j], E1[j]);
            edec[j] = std::exp(-kap * h);
        }

        // forward sweeps: J(y) = int_0^y e^{-k(y-z)} w, M(y) = int_0^y e^{-kz} w
        std::vector<complexd> J(ny), M(ny), Iup(ny);
        J[0] = complexd(0.0);
        M[0] = complexd(0.0);
        for (int j = 0; j + 1 < ny; ++j) {
            const double h = g.y_nodes[j + 1] - g.y_nodes[j];
            const complexd slope = (w[j + 1] - w[j]) / h;
            J[j + 1] = edec[j] * J[j] + (w[j] + slope * h) * E0[j] - slope * E1[j];
            M[j + 1] = M[j] + std::exp(-kap * g.y_nodes[j]) * (w[j] * E0[j] + slope * E1[j]);
        }
        Iup[ny - 1] = complexd(0.0);
        for (int j = ny - 2; j >= 0; --j) {
            const double h = g.y_nodes[j + 1] - g.y_nodes[j];
            const complexd slope = (w[j + 1] - w[j]) / h;
            Iup[j] = edec[j] * Iup[j + 1] + w[j] * E0[j] + slope * E1[j];
        }

        const complexd iv(0.0, 1.0);
        for (int j = 0; j < ny; ++j) {
            const double ey = std::exp(-2.0 * kap * g.y_nodes[j]);
            const complexd Ilow = J[j] - std::exp(-kap * g.y_nodes[j]) * M[j];
            u[j] = 0.5 * (-Ilow + (1.0 + ey) * Iup[j]);
            v[j] = -0.5 * iv * sgn * (Ilow + (1.0 - ey) * Iup[j]);
            // d_y v = -i (2 pi xi) u, exact for these integrals
            dv[j] = -iv * g.kappa_signed(k) * u[j];
        }
    }
    return out;
}

double VelocityField::divergence_defect() const {
    const HalfPlaneGrid& g = u.grid;
    double worst = 0.0;
    for (int k = 0; k < g.N_x; ++k) {
        const complexd iv(0.0, 1.0);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < g.n_y(); ++j) {
            const complexd d = iv * g.kappa_signed(k) * u.at(k, j) + dv_dy.at(k, j);
            num = std::max(num, std::abs(d));
            den = std::max(den, std::abs(g.kappa_signed(k) * u.at(k, j)));
        }
        if (den > 0.0) worst = std::max(worst, num / den);
    }
    return worst;
}

double VelocityField::max_wall_penetration() const {
    double worst = 0.0;
    for (int k = 0; k < u.grid.N_x; ++k) worst = std::max(worst, std::abs(v.at(k, 0)));
    return worst;
}

std::vector<complexd> boundary_trace_dyinv(const SpectralField& f) {
    std::vector<complexd> out(f.grid.N_x);
    for (int k = 0; k < f.grid.N_x; ++k)
        out[k] = boundary_trace_dyinv(f.grid, f.mode(k), f.grid.kappa_abs(k));
    return out;
}

complexd boundary_trace_dyinv(const HalfPlaneGrid& g, const complexd* profile, double kappa) {
    complexd acc(0.0, 0.0);
    for (int j = 0; j + 1 < g.n_y(); ++j) {
        const double h = g.y_nodes[j + 1] - g.y_nodes[j];
        double E0, E1;
        detail::exp_moments(kappa, h, E0, E1);
        const complexd slope = (profile[j + 1] - profile[j]) / h;
        const double a = std::abs(profile[j]);
        if (std::isnan(a)) throw std::domain_error("boundary_trace_dyinv: NaN profile");
        acc += std::exp(-kappa * g.y_nodes[j]) * (profile[j] * E0 + slope * E1);
    }
    return -acc;
}

VectorSelfSimilarField bs_fullplane(const SelfSimilarField& W, unsigned threads) {
    const SelfSimilarGrid& g = W.grid;
    for (double v : W.values)
        if (std::isnan(v)) throw std::domain_error("bs_fullplane: NaN input");
    const int n = g.n;
    const double h = g.h, hh = 0.5 * h;

    // cell-integrated kernel at node offsets
    const int m = 2 * n - 1;
    std::vector<Vec2> tab(static_cast<std::size_t>(m) * m);
    for (int di = -(n - 1); di <= n - 1; ++di)
        for (int dj = -(n - 1); dj <= n - 1; ++dj) {
            Vec2 val(0.0, 0.0);
            if (di != 0 || dj != 0) {
                const double u1 = di * h, u2 = dj * h;
                val = detail::kernel_box_integral(u1 - hh, u1 + hh, u2 - hh, u2 + hh);
            }
            tab[static_cast<std::size_t>(di + n - 1) * m + (dj + n - 1)] = val;
        }

    VectorSelfSimilarField out(g, W.t_label);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        for (int j = 0; j < n; ++j) {
            KahanSum sx, sy;
            for (int si = 0; si < n; ++si) {
                const Vec2* row = tab.data() + static_cast<std::size_t>(i - si + n - 1) * m + (j + n - 1);
                const double* wrow = W.values.data() + static_cast<std::size_t>(si) * n;
                for (int sj = 0; sj < n; ++sj) {
                    const Vec2& kv = row[-sj];
                    sx.add(kv.x * wrow[sj]);
                    sy.add(kv.y * wrow[sj]);
                }
            }
            // gradient correction in the singular cell (square-cell exact)
            const int ic = std::clamp(i, 1, n - 2), jc = std::clamp(j, 1, n - 2);
            const double w1 = (W.at(ic + 1, jc) - W.at(ic - 1, jc)) / (2.0 * h);
            const double w2 = (W.at(ic, jc + 1) - W.at(ic, jc - 1)) / (2.0 * h);
            out.u1.at(i, j) = sx.value() + h * h / (4.0 * kPi) * w2;
            out.u2.at(i, j) = sy.value() - h * h / (4.0 * kPi) * w1;
        }
    }, threads);
    return out;
}

Vec2 bs_fullplane_at(const SelfSimilarField& W, Vec2 p) {
    const SelfSimilarGrid& g = W.grid;
    const double hh = 0.5 * g.h;
    Vec2 acc(0.0, 0.0);
    for (int si = 0; si < g.n; ++si)
        for (int sj = 0; sj < g.n; ++sj) {
            const double w = W.at(si, sj);
            if (w == 0.0) continue;
            const double u1 = p.x - g.node(si), u2 = p.y - g.node(sj);
            acc += detail::kernel_box_integral(u1 - hh, u1 + hh, u2 - hh, u2 + hh) * w;
        }
    return acc;
}

}  // namespace vhp
