#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vhp/selfsim.hpp"

namespace vhp {

// Lamb-Oseen profile and its velocity
inline double oseen_G(Vec2 eta) { return std::exp(-0.25 * eta.norm2()) / (4.0 * kPi); }
inline Vec2 oseen_grad_G(Vec2 eta) { return eta * (-0.5 * oseen_G(eta)); }

inline Vec2 oseen_VG(Vec2 eta) {
    const double r2 = eta.norm2();
    if (r2 < 1e-24) return Vec2(0.0, 0.0);  // removable singularity
    double f;
    const double q = 0.25 * r2;
    if (q < 1e-4)
        f = 0.25 * (1.0 - 0.5 * q * (1.0 - q / 3.0));  // (1-e^{-q})/r2
    else
        f = -std::expm1(-q) / r2;
    return eta.perp() * (f / (2.0 * kPi));
}

// V^G(eta + te) - V^G(te), evaluated without cancellation for |te| >> |eta|.
Vec2 far_image_difference(Vec2 eta, Vec2 eta_tilde);

struct VortexState {
    double t = 0.0;
    Vec2 X;             // X0 + nu^{1/2} X1 + nu X2
    Vec2 X0, X1, X2;
    Vec2 Xdot;          // derivative of X at t
    double alpha = 1.0;
    double nu = 4e-3;
};

struct VortexTrajectory {
    std::vector<VortexState> states;  // strictly increasing t
    double alpha = 1.0;
    double nu = 4e-3;

    VortexState eval(double t) const;  // cubic Hermite between stored states
};

// X0'(t) = -(alpha/sqrt(nu t)) V^G((X0-X0^*)/sqrt(nu t)), X0(0) = start;
// X1' = C0(t), X2' = C1(t) when the forcings are given (both start at 0).
// Embedded RK45 with per-unit-time error <= tol.
VortexTrajectory integrate_vortex_ode(
    double alpha, double nu, Vec2 start, double t_end,
    const std::function<Vec2(double)>* C0 = nullptr,
    const std::function<Vec2(double)>* C1 = nullptr,
    double tol = 1e-10, int n_store = 512);

struct ResidualExpansion {
    SelfSimilarField A;   // coefficient of t      (angular mode 2)
    SelfSimilarField B;   // coefficient of nu^{1/2} t^{3/2}  (mode 3)
    double remainder_sup = 0.0;   // sup |F(eps) - A - eps B| / eps^2
    double ratio_even = 0.0;      // Richardson ratio checks (expect ~0.25)
    double ratio_odd = 0.0;
    double mode_purity_A = 0.0;   // relative off-mode-2 content
    double mode_purity_B = 0.0;   // relative off-mode-3 content
};

// Extract A and B from R_vp^{(0)} = -(alpha/nu)[V^G(eta+te) - V^G(te)].grad G
// by Richardson extrapolation in eps = sqrt(nu t) at eps, eps/2, eps/4,
// splitting even/odd parity in eta. Throws if the ratio test fails.
ResidualExpansion residual_leading(double alpha, double nu, double t, const VortexState& X,
                                   const SelfSimilarGrid& grid);

}  // namespace vhp
