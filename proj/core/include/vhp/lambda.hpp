#pragma once

#include <memory>
#include <vector>

#include "vhp/oseen.hpp"
#include "vhp/selfsim.hpp"

namespace vhp {

struct RadialGrid {
    std::vector<double> r;  // strictly increasing, r[0] > 0
    std::vector<double> w;  // plain-dr quadrature weights
};

RadialGrid make_radial_grid(int n = 400, double r_min = 1e-3, double r_max = 12.0);

// one angular mode: w = a(r) cos(n theta) + b(r) sin(n theta)
struct RadialModeProfile {
    int n = 0;
    std::vector<double> r_nodes;
    std::vector<double> a, b;
};

// weighted norms of the space Y restricted to one mode
double norm_Y(const RadialGrid& g, const RadialModeProfile& p);
double inner_Y(const RadialGrid& g, const RadialModeProfile& p, const RadialModeProfile& q);
// ||W||_Y computed from the same polar sampling project_mode uses
double norm_Y_polar(const SelfSimilarField& W, const RadialGrid& g, int n_theta = 64);

// stream-function data of the mode-n Biot-Savart velocity; evaluates the
// induced velocity anywhere (power-law continuation beyond the grid)
struct ModeVelocity {
    int n = 0;
    std::shared_ptr<const RadialGrid> grid;
    std::vector<double> psi_a, psi_b;    // stream function coefficients (cos, sin)
    std::vector<double> dpsi_a, dpsi_b;  // radial derivatives
    double I1a_total = 0.0, I1b_total = 0.0;  // int_0^rmax s^{n+1} w ds

    Vec2 eval(Vec2 eta) const;
};

struct InvertReport {
    double residual_rel = 0.0;   // ||Lambda w - f||_Y / ||f||_Y
    double condition = 0.0;      // |lambda|_max / |lambda|_min kept
};

class LambdaSolver {
  public:
    explicit LambdaSolver(RadialGrid grid = make_radial_grid(), int n_theta = 64);
    ~LambdaSolver();
    LambdaSolver(LambdaSolver&&) noexcept;

    const RadialGrid& grid() const;

    // trigonometric quadrature over interpolated circles
    RadialModeProfile project_mode(const SelfSimilarField& W, int n) const;

    // Lambda w = V^G.grad w + V^w.grad G for one mode; n >= 1
    RadialModeProfile apply_lambda(const RadialModeProfile& w) const;

    // solve Lambda w = f; minimum-norm orthogonal to Ker for n = 1
    RadialModeProfile invert_lambda(int n, const RadialModeProfile& f,
                                    InvertReport* report = nullptr) const;

    ModeVelocity mode_velocity(const RadialModeProfile& w) const;

    // assemble a Cartesian field from mode profiles
    SelfSimilarField to_field(const std::vector<RadialModeProfile>& modes,
                              const SelfSimilarGrid& g, double t_label = 0.0) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct Omega23 {
    SelfSimilarField omega2, omega3;
    RadialModeProfile w2;        // mode-2 profile of Omega2
    RadialModeProfile w3_m2, w3_m3;  // mode-2 / mode-3 parts of Omega3
    ModeVelocity v2, v3_m2, v3_m3;
    InvertReport rep2, rep3;
};

// Omega2 solves alpha Lambda Omega2 = -A; Omega3 solves
// alpha Lambda Omega3 = -(sqrt(t) B + D0). A, D0 must be mode 2 and B mode 3.
Omega23 build_omega23(const LambdaSolver& solver, const SelfSimilarField& A,
                      const SelfSimilarField& B, const SelfSimilarField& D0, double alpha,
                      double t, const SelfSimilarGrid& out_grid);

}  // namespace vhp
