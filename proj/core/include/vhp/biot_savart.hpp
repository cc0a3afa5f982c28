#pragma once

#include <vector>

#include "vhp/field.hpp"
#include "vhp/selfsim.hpp"

namespace vhp {

// Velocity recovered from vorticity; dv_dy comes from the differentiated
// mode formula, which makes 2*pi*i*xi*u + dv_dy vanish identically.
struct VelocityField {
    SpectralField u, v, dv_dy;

    // max over modes of ||i kappa u + dv_dy|| / scale
    double divergence_defect() const;
    double max_wall_penetration() const;  // max |v_xi(0)|
};

// Half-plane Biot-Savart, mode by mode:
//   u_xi(y) =  1/2 [ -I_low(y) + (1+e^{-2k y}) I_up(y) ]
//   v_xi(y) = -(i sgn xi)/2 [ I_low(y) + (1-e^{-2k y}) I_up(y) ]
// with k = 2 pi |xi|, I_low = int_0^y e^{-k(y-z)} (1-e^{-2kz}) omega dz,
// I_up = int_y^inf e^{-k(z-y)} omega dz; integrals are exact for the
// piecewise-linear interpolant of the mode profile. Mode 0 closes with the
// gauge u_0(y_max) = 0, v_0 = 0.
VelocityField bs_halfplane(const SpectralField& omega);

// (d_y Delta_D^{-1} f)_xi |_{y=0} = -int_0^inf e^{-k y} f_xi(y) dy, all modes.
std::vector<complexd> boundary_trace_dyinv(const SpectralField& f);
// same trace for a single profile at given kappa = 2 pi |xi|
complexd boundary_trace_dyinv(const HalfPlaneGrid& g, const complexd* profile, double kappa);

// Full-plane Biot-Savart on the eta grid by direct summation with the
// kernel integrated exactly over source cells (the singular cell drops by
// antisymmetry).
VectorSelfSimilarField bs_fullplane(const SelfSimilarField& W, unsigned threads = 0);
Vec2 bs_fullplane_at(const SelfSimilarField& W, Vec2 p);

namespace detail {
// integral of the BS kernel over an axis-aligned rectangle, used by
// bs_fullplane and its tests
Vec2 kernel_box_integral(double a, double b, double c, double d);
// exponential cell moments: E0 = int_0^h e^{-k s} ds, E1 = int_0^h s e^{-k s} ds
void exp_moments(double k, double h, double& E0, double& E1);
}  // namespace detail

}  // namespace vhp
