#include "vhp/lambda.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "vhp/grid.hpp"

namespace vhp {

namespace {

inline double G_r(double r) { return std::exp(-0.25 * r * r) / (4.0 * kPi); }

// v_G(r)/r = (1 - e^{-r^2/4}) / (2 pi r^2), finite at r = 0
inline double vG_over_r(double r) {
    const double q = 0.25 * r * r;
    if (q < 1e-6) return (0.25 - q / 8.0) / (2.0 * kPi);
    return -std::expm1(-q) / (2.0 * kPi * r * r);
}

// integral of s^p over [s0,s1] against the linear interpolant weights:
// returns (w0, w1) with int s^p w~(s) ds = w0 f(s0) + w1 f(s1)
void power_cell_weights(double p, double s0, double s1, double& w0, double& w1) {
    auto ipow = [&](double q) {  // int_{s0}^{s1} s^q ds
        if (std::abs(q + 1.0) < 1e-12) return std::log(s1 / s0);
        return (std::pow(s1, q + 1.0) - std::pow(s0, q + 1.0)) / (q + 1.0);
    };
    const double h = s1 - s0;
    const double m0 = ipow(p), m1 = ipow(p + 1.0);
    // w~(s) = f0 (s1-s)/h + f1 (s-s0)/h
    w0 = (s1 * m0 - m1) / h;
    w1 = (m1 - s0 * m0) / h;
}

}  // namespace

RadialGrid make_radial_grid(int n, double r_min, double r_max) {
    RadialGrid g;
    g.r.resize(n);
    const double rho = std::pow(r_max / r_min, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) g.r[i] = r_min * std::pow(rho, i);
    g.r.back() = r_max;
    g.w = cubic_quadrature_weights(g.r);
    return g;
}

double norm_Y(const RadialGrid& g, const RadialModeProfile& p) {
    return std::sqrt(inner_Y(g, p, p));
}

double inner_Y(const RadialGrid& g, const RadialModeProfile& p, const RadialModeProfile& q) {
    const double cn = p.n == 0 ? 2.0 * kPi : kPi;
    KahanSum s;
    for (std::size_t i = 0; i < g.r.size(); ++i) {
        const double mu = g.w[i] * std::exp(0.25 * g.r[i] * g.r[i]) * g.r[i];
        s.add(mu * (p.a[i] * q.a[i] + p.b[i] * q.b[i]));
    }
    return cn * s.value();
}

// ---------------------------------------------------------------------------

struct LambdaSolver::Impl {
    RadialGrid rg;
    int n_theta;
    int N;  // grid size

    struct ModeData {
        Eigen::MatrixXd K;     // Lambda = (a,b) -> (K b, -K a)
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;  // of D^{1/2} K D^{-1/2}
    };
    mutable std::map<int, ModeData> modes;
    Eigen::VectorXd sqrt_metric;  // sqrt(w_i r_i) (the 1/4pi and pi factors cancel)

    // Green operator: psi(r_i) = -(1/2n)[ r^{-n} I1(r) + r^{n} (I2(r)+tail) ]
    Eigen::MatrixXd green_matrix(int n) const {
        Eigen::MatrixXd I1 = Eigen::MatrixXd::Zero(N, N);
        Eigen::MatrixXd I2 = Eigen::MatrixXd::Zero(N, N);
        // inner segment [0, r_0]: w ~ w_0 (s/r_0)^n, so the s^{n+1} moment is
        // w_0 r_0^{n+2} / (2n+2)
        const double r0 = rg.r[0];
        const double inner0 = std::pow(r0, n + 2.0) / (2.0 * n + 2.0);
        for (int c = 0; c + 1 < N; ++c) {
            double w0, w1;
            power_cell_weights(n + 1.0, rg.r[c], rg.r[c + 1], w0, w1);
            for (int i = c + 1; i < N; ++i) { I1(i, c) += w0; I1(i, c + 1) += w1; }
            power_cell_weights(1.0 - n, rg.r[c], rg.r[c + 1], w0, w1);
            for (int i = 0; i <= c; ++i) { I2(i, c) += w0; I2(i, c + 1) += w1; }
        }
        // Gaussian tail beyond r_max: w(s) ~ w(rmax) e^{(rmax^2 - s^2)/4}
        const double rm = rg.r.back();
        double tail = 0.0;
        {
            const int m = 2000;
            const double s_hi = rm + 12.0;
            KahanSum acc;
            for (int k = 0; k <= m; ++k) {
                const double s = rm + (s_hi - rm) * k / m;
                const double f = std::pow(s, 1.0 - n) * std::exp(0.25 * (rm * rm - s * s));
                acc.add((k == 0 || k == m) ? 0.5 * f : f);
            }
            tail = acc.value() * (s_hi - rm) / m;
        }
        Eigen::MatrixXd Gm(N, N);
        for (int i = 0; i < N; ++i) {
            const double ri = rg.r[i];
            for (int j = 0; j < N; ++j)
                Gm(i, j) = std::pow(ri, -double(n)) * I1(i, j) + std::pow(ri, double(n)) * I2(i, j);
            Gm(i, 0) += std::pow(ri, -double(n)) * inner0;
            Gm(i, N - 1) += std::pow(ri, double(n)) * tail;
        }
        return -Gm / (2.0 * n);
    }

    const ModeData& mode(int n) const {
        auto it = modes.find(n);
        if (it != modes.end()) return it->second;
        ModeData md;
        Eigen::MatrixXd Gm = green_matrix(n);
        Eigen::MatrixXd K(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                K(i, j) = n * (0.5 * G_r(rg.r[i]) * Gm(i, j) + (i == j ? vG_over_r(rg.r[i]) : 0.0));
        // enforce self-adjointness in the Y metric: diag(w r / 4pi) K symmetric.
        // The multiplication part is diagonal; symmetrize the Green part.
        Eigen::VectorXd d(N);
        for (int i = 0; i < N; ++i) d(i) = rg.w[i] * rg.r[i];
        Eigen::MatrixXd S = d.asDiagonal() * K;
        S = 0.5 * (S + S.transpose()).eval();
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) K(i, j) = S(i, j) / d(i);
        md.K = K;
        // spectral data of the symmetric similarity D^{1/2} K D^{-1/2}
        Eigen::MatrixXd Ksym(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                Ksym(i, j) = std::sqrt(d(i)) * K(i, j) / std::sqrt(d(j));
        Ksym = 0.5 * (Ksym + Ksym.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ksym);
        md.evals = es.eigenvalues();
        md.evecs = es.eigenvectors();
        auto [pos, _] = modes.emplace(n, std::move(md));
        return pos->second;
    }
};

LambdaSolver::LambdaSolver(RadialGrid grid, int n_theta) : impl_(new Impl) {
    impl_->rg = std::move(grid);
    impl_->n_theta = n_theta;
    impl_->N = static_cast<int>(impl_->rg.r.size());
    impl_->sqrt_metric.resize(impl_->N);
    for (int i = 0; i < impl_->N; ++i)
        impl_->sqrt_metric(i) = std::sqrt(impl_->rg.w[i] * impl_->rg.r[i]);
}

LambdaSolver::~LambdaSolver() = default;
LambdaSolver::LambdaSolver(LambdaSolver&&) noexcept = default;

const RadialGrid& LambdaSolver::grid() const { return impl_->rg; }

RadialModeProfile LambdaSolver::project_mode(const SelfSimilarField& W, int n) const {
    const RadialGrid& rg = impl_->rg;
    const int nt = impl_->n_theta;
    require(n <= nt / 2, "project_mode: n exceeds angular sampling");
    if (rg.r.back() > W.grid.R + 1e-9)
        throw std::domain_error("project_mode: radial grid exceeds field radius");
    RadialModeProfile p;
    p.n = n;
    p.r_nodes = rg.r;
    p.a.assign(rg.r.size(), 0.0);
    p.b.assign(rg.r.size(), 0.0);
    const double scale = (n == 0 ? 1.0 : 2.0) / nt;
    for (std::size_t i = 0; i < rg.r.size(); ++i) {
        double ac = 0.0, as = 0.0;
        for (int m = 0; m < nt; ++m) {
            const double th = 2.0 * kPi * m / nt;
            const double v = W.interp(rg.r[i] * std::cos(th), rg.r[i] * std::sin(th));
            ac += v * std::cos(n * th);
            as += v * std::sin(n * th);
        }
        p.a[i] = scale * ac;
        p.b[i] = scale * as;
    }
    return p;
}

double norm_Y_polar(const SelfSimilarField& W, const RadialGrid& g, int n_theta) {
    KahanSum s;
    for (std::size_t i = 0; i < g.r.size(); ++i) {
        double ring = 0.0;
        for (int m = 0; m < n_theta; ++m) {
            const double th = 2.0 * kPi * m / n_theta;
            const double v = W.interp(g.r[i] * std::cos(th), g.r[i] * std::sin(th));
            ring += v * v;
        }
        s.add(g.w[i] * std::exp(0.25 * g.r[i] * g.r[i]) * g.r[i] * ring * (2.0 * kPi / n_theta));
    }
    return std::sqrt(s.value());
}

RadialModeProfile LambdaSolver::apply_lambda(const RadialModeProfile& w) const {
    require(w.n >= 1, "apply_lambda: mode 0 lies in the kernel");
    const auto& md = impl_->mode(w.n);
    const int N = impl_->N;
    Eigen::Map<const Eigen::VectorXd> a(w.a.data(), N), b(w.b.data(), N);
    Eigen::VectorXd Ka = md.K * a, Kb = md.K * b;
    RadialModeProfile out;
    out.n = w.n;
    out.r_nodes = w.r_nodes;
    out.a.assign(Kb.data(), Kb.data() + N);
    Eigen::VectorXd mKa = -Ka;
    out.b.assign(mKa.data(), mKa.data() + N);
    return out;
}

RadialModeProfile LambdaSolver::invert_lambda(int n, const RadialModeProfile& f,
                                              InvertReport* report) const {
    require(n >= 1, "invert_lambda: n >= 1 required");
    const auto& md = impl_->mode(n);
    const int N = impl_->N;
    const RadialGrid& rg = impl_->rg;

    if (n == 1) {
        // solvability: f orthogonal to P1 d_1 G and P1 d_2 G in Y
        RadialModeProfile ker;
        ker.n = 1;
        ker.r_nodes = rg.r;
        ker.a.resize(N);
        ker.b.assign(N, 0.0);
        for (int i = 0; i < N; ++i) ker.a[i] = -0.5 * rg.r[i] * G_r(rg.r[i]);
        const double kn = norm_Y(rg, ker);
        RadialModeProfile kb = ker;
        std::swap(kb.a, kb.b);
        const double fn = norm_Y(rg, f);
        if (fn > 0.0) {
            const double c1 = std::abs(inner_Y(rg, f, ker)) / (kn * fn);
            const double c2 = std::abs(inner_Y(rg, f, kb)) / (kn * fn);
            if (c1 > 1e-6 || c2 > 1e-6)
                throw std::domain_error("invert_lambda: n=1 solvability violated");
        }
    }

    // Lambda w = f  <=>  K b_w = f_a, K a_w = -f_b; pseudo-inverse of the
    // symmetric similarity with a relative spectral cutoff.
    const double cutoff = 1e-10 * md.evals.cwiseAbs().maxCoeff();
    auto solveK = [&](const std::vector<double>& rhs) {
        Eigen::VectorXd g(N);
        for (int i = 0; i < N; ++i) g(i) = rhs[i] * impl_->sqrt_metric(i);
        Eigen::VectorXd c = md.evecs.transpose() * g;
        for (int i = 0; i < N; ++i)
            c(i) = std::abs(md.evals(i)) > cutoff ? c(i) / md.evals(i) : 0.0;
        Eigen::VectorXd x = md.evecs * c;
        std::vector<double> out(N);
        for (int i = 0; i < N; ++i) out[i] = x(i) / impl_->sqrt_metric(i);
        return out;
    };

    RadialModeProfile w;
    w.n = n;
    w.r_nodes = rg.r;
    w.b = solveK(f.a);
    std::vector<double> mb(N);
    for (int i = 0; i < N; ++i) mb[i] = -f.b[i];
    w.a = solveK(mb);

    if (report) {
        RadialModeProfile chk = apply_lambda(w);
        double num = 0.0;
        RadialModeProfile diff = chk;
        for (int i = 0; i < N; ++i) {
            diff.a[i] -= f.a[i];
            diff.b[i] -= f.b[i];
        }
        const double fn = norm_Y(rg, f);
        num = norm_Y(rg, diff);
        report->residual_rel = fn > 0.0 ? num / fn : num;
        double lmin = 1e300, lmax = 0.0;
        for (int i = 0; i < N; ++i) {
            const double a = std::abs(md.evals(i));
            if (a > cutoff) lmin = std::min(lmin, a);
            lmax = std::max(lmax, a);
        }
        report->condition = lmax / lmin;
    }
    return w;
}

ModeVelocity LambdaSolver::mode_velocity(const RadialModeProfile& w) const {
    const RadialGrid& rg = impl_->rg;
    const int N = impl_->N;
    const int n = w.n;
    ModeVelocity mv;
    mv.n = n;
    mv.grid = std::make_shared<RadialGrid>(rg);
    mv.psi_a.assign(N, 0.0);
    mv.psi_b.assign(N, 0.0);
    mv.dpsi_a.assign(N, 0.0);
    mv.dpsi_b.assign(N, 0.0);

    auto build = [&](const std::vector<double>& f, std::vector<double>& psi,
                     std::vector<double>& dpsi, double& I1tot) {
        std::vector<double> I1(N, 0.0), I2(N, 0.0);
        const double r0 = rg.r[0];
        I1[0] = f[0] * std::pow(r0, n + 2.0) / (2.0 * n + 2.0);
        for (int c = 0; c + 1 < N; ++c) {
            double w0, w1;
            power_cell_weights(n + 1.0, rg.r[c], rg.r[c + 1], w0, w1);
            I1[c + 1] = I1[c] + w0 * f[c] + w1 * f[c + 1];
        }
        for (int c = N - 2; c >= 0; --c) {
            double w0, w1;
            power_cell_weights(1.0 - n, rg.r[c], rg.r[c + 1], w0, w1);
            I2[c] = I2[c + 1] + w0 * f[c] + w1 * f[c + 1];
        }
        for (int i = 0; i < N; ++i) {
            const double ri = rg.r[i];
            psi[i] = -0.5 / n * (std::pow(ri, -double(n)) * I1[i] + std::pow(ri, double(n)) * I2[i]);
            dpsi[i] = -0.5 * (-std::pow(ri, -double(n) - 1.0) * I1[i] +
                              std::pow(ri, double(n) - 1.0) * I2[i]);
        }
        I1tot = I1[N - 1];
    };
    build(w.a, mv.psi_a, mv.dpsi_a, mv.I1a_total);
    build(w.b, mv.psi_b, mv.dpsi_b, mv.I1b_total);
    return mv;
}

namespace {

double interp_radial(const std::vector<double>& r, const std::vector<double>& f, double x) {
    const int N = static_cast<int>(r.size());
    if (x <= r.front()) return f.front() * (r.front() > 0.0 ? x / r.front() : 1.0);
    auto it = std::upper_bound(r.begin(), r.end(), x);
    int i1 = std::clamp(static_cast<int>(it - r.begin()), 1, N - 1);
    int base = std::clamp(i1 - 2, 0, N - 4);
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) {
        double term = f[base + b];
        for (int j = 0; j < 4; ++j)
            if (j != b) term *= (x - r[base + j]) / (r[base + b] - r[base + j]);
        acc += term;
    }
    return acc;
}

}  // namespace

Vec2 ModeVelocity::eval(Vec2 eta) const {
    const double r = eta.norm();
    if (r < 1e-14) return Vec2(0.0, 0.0);
    const double th = std::atan2(eta.y, eta.x);
    double Pa, Pb, dPa, dPb;
    const auto& rg = *grid;
    if (r <= rg.r.back()) {
        Pa = interp_radial(rg.r, psi_a, r);
        Pb = interp_radial(rg.r, psi_b, r);
        dPa = interp_radial(rg.r, dpsi_a, r);
        dPb = interp_radial(rg.r, dpsi_b, r);
    } else {
        // beyond the support: psi = -(1/2n) r^{-n} I1_total
        const double rn = std::pow(r, -double(n));
        Pa = -0.5 / n * rn * I1a_total;
        Pb = -0.5 / n * rn * I1b_total;
        dPa = 0.5 * rn / r * I1a_total;
        dPb = 0.5 * rn / r * I1b_total;
    }
    const double cn = std::cos(n * th), sn = std::sin(n * th);
    const double u_r = (n / r) * (Pa * sn - Pb * cn);
    const double u_t = dPa * cn + dPb * sn;
    const Vec2 e_r(std::cos(th), std::sin(th)), e_t(-std::sin(th), std::cos(th));
    return e_r * u_r + e_t * u_t;
}

SelfSimilarField LambdaSolver::to_field(const std::vector<RadialModeProfile>& modes,
                                        const SelfSimilarGrid& g, double t_label) const {
    SelfSimilarField out(g, t_label);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = g.node(i), y = g.node(j);
            const double r = std::hypot(x, y), th = std::atan2(y, x);
            double v = 0.0;
            for (const auto& m : modes) {
                if (r > m.r_nodes.back()) continue;
                const double a = interp_radial(m.r_nodes, m.a, r);
                const double b = interp_radial(m.r_nodes, m.b, r);
                v += a * std::cos(m.n * th) + b * std::sin(m.n * th);
            }
            out.at(i, j) = v;
        }
    return out;
}

Omega23 build_omega23(const LambdaSolver& solver, const SelfSimilarField& A,
                      const SelfSimilarField& B, const SelfSimilarField& D0, double alpha,
                      double t, const SelfSimilarGrid& out_grid) {
    require(alpha != 0.0, "build_omega23: alpha must be nonzero");
    Omega23 out;
    const RadialGrid& rg = solver.grid();

    auto check_mode = [&](const SelfSimilarField& f, int n, const char* what) {
        RadialModeProfile p = solver.project_mode(f, n);
        const double total = norm_Y_polar(f, rg);
        const double kept = norm_Y(rg, p);
        if (total > 0.0 && std::sqrt(std::max(0.0, total * total - kept * kept)) > 1e-3 * total)
            throw std::domain_error(std::string("build_omega23: off-mode content in ") + what);
        return p;
    };

    RadialModeProfile pA = check_mode(A, 2, "A");
    RadialModeProfile pB = check_mode(B, 3, "B");
    RadialModeProfile pD = check_mode(D0, 2, "D0");

    auto scale = [&](RadialModeProfile p, double s) {
        for (auto& v : p.a) v *= s;
        for (auto& v : p.b) v *= s;
        return p;
    };

    out.w2 = solver.invert_lambda(2, scale(pA, -1.0 / alpha), &out.rep2);
    RadialModeProfile rhs3 = scale(pB, -std::sqrt(t) / alpha);
    out.w3_m3 = solver.invert_lambda(3, rhs3, &out.rep3);
    out.w3_m2 = solver.invert_lambda(2, scale(pD, -1.0 / alpha), nullptr);

    out.omega2 = solver.to_field({out.w2}, out_grid, t);
    out.omega3 = solver.to_field({out.w3_m2, out.w3_m3}, out_grid, t);
    out.v2 = solver.mode_velocity(out.w2);
    out.v3_m2 = solver.mode_velocity(out.w3_m2);
    out.v3_m3 = solver.mode_velocity(out.w3_m3);
    return out;
}

}  // namespace vhp
