#pragma once

#include <vector>

#include "vhp/util.hpp"

namespace vhp {

// Quadrature weights for nodes of a graded 1D grid. The rule integrates the
// piecewise cubic through each cell's four surrounding nodes, so it is exact
// for polynomials up to degree 3 between adjacent nodes.
std::vector<double> cubic_quadrature_weights(const std::vector<double>& nodes);

// Discretization of the half plane: periodic, uniform in x over
// [-L_x/2, L_x/2) with N_x modes, graded in y on [0, y_max].
//
// Fourier convention: frequencies xi_k = k/L_x against the kernel
// e^{-2 pi i x xi}; the operator |D_x| acts per mode as multiplication by
// kappa_k = 2 pi |xi_k|, which is what all mode-wise kernels below take.
struct HalfPlaneGrid {
    double L_x = 80.0;
    int N_x = 256;
    std::vector<double> y_nodes;    // y_nodes[0] == 0, strictly increasing
    std::vector<double> y_weights;  // positive, sum == y_max

    int n_y() const { return static_cast<int>(y_nodes.size()); }
    double y_max() const { return y_nodes.back(); }

    double x_node(int i) const { return -0.5 * L_x + L_x * static_cast<double>(i) / N_x; }
    double dx() const { return L_x / N_x; }

    // signed integer mode for storage index k in [0, N_x)
    int mode_number(int k) const { return k < N_x / 2 ? k : k - N_x; }
    double xi(int k) const { return static_cast<double>(mode_number(k)) / L_x; }
    // |D_x| symbol of mode k (>= 0)
    double kappa_abs(int k) const { return 2.0 * kPi * std::abs(xi(k)); }
    // d/dx symbol of mode k (purely imaginary i*2*pi*xi)
    double kappa_signed(int k) const { return 2.0 * kPi * xi(k); }

    // quadrature of nodal samples over y
    double integrate_y(const std::vector<double>& f) const;

    // index of the first node with y >= value (n_y() if none)
    int lower_node(double y) const;
};

struct GridParams {
    double L_x = 80.0;
    int N_x = 256;
    double nu = 4e-3;       // sets the near-wall spacing
    double y_max = 60.0;
    double z_cap = 12.0;    // boundary-layer widths resolved at fine spacing
    double coarse_dy = 0.1;
};

// Graded y-grid: spacing min(sqrt(nu)/8, 0.05) on [0, 4 sqrt(nu) z_cap],
// geometric transition to coarse_dy, uniform up to y_max.
HalfPlaneGrid make_grid(const GridParams& p);

// Uniform-in-y variant used by tests that need specific resolution.
HalfPlaneGrid make_uniform_grid(double L_x, int N_x, double y_max, double dy);

// C^infty glue from the standard bump e^{-1/s}: 0 for u<=0, 1 for u>=1.
double smoothstep_bump(double u);

// The three cutoffs shared by every module. chi_vp is 1 inside the ball of
// radius 5 about (0,20), 0 outside radius 6; chi_b is 1 for y<=2, 0 for y>=3;
// chi_m covers the middle region (1 when far from the vortex ball and off the
// wall, 0 near either).
struct CutoffSet {
    Vec2 vortex_center{0.0, 20.0};

    double chi_vp(double x, double y) const {
        const double r = (Vec2(x, y) - vortex_center).norm();
        return 1.0 - smoothstep_bump(r - 5.0);
    }
    double chi_b(double y) const { return 1.0 - smoothstep_bump(y - 2.0); }
    double chi_m(double x, double y) const {
        const double r = (Vec2(x, y) - vortex_center).norm();
        return smoothstep_bump(r - 3.0) * smoothstep_bump((y - 0.25) * 8.0);
    }
};

}  // namespace vhp
