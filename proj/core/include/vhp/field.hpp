#pragma once

#include <functional>
#include <vector>

#include "vhp/grid.hpp"

namespace vhp {

// Vorticity (or any scalar) as complex mode profiles omega_xi(y), stored
// mode-major in FFT order k = 0..N_x-1 (non-negative modes first).
struct SpectralField {
    HalfPlaneGrid grid;
    std::vector<complexd> data;  // size N_x * n_y, index [k*n_y + j]
    bool reality = false;        // data[-k] = conj(data[k]) asserted

    SpectralField() = default;
    explicit SpectralField(const HalfPlaneGrid& g, bool real_flag = false)
        : grid(g), data(static_cast<std::size_t>(g.N_x) * g.n_y(), complexd(0.0, 0.0)),
          reality(real_flag) {}

    complexd& at(int k, int j) { return data[static_cast<std::size_t>(k) * grid.n_y() + j]; }
    const complexd& at(int k, int j) const {
        return data[static_cast<std::size_t>(k) * grid.n_y() + j];
    }
    complexd* mode(int k) { return data.data() + static_cast<std::size_t>(k) * grid.n_y(); }
    const complexd* mode(int k) const {
        return data.data() + static_cast<std::size_t>(k) * grid.n_y();
    }

    // max |data[-k] - conj(data[k])| over all modes and nodes
    double conjugate_symmetry_defect() const;
};

// Physical-space samples f(x_i, y_j), row-major in i.
struct PhysicalField {
    HalfPlaneGrid grid;
    std::vector<double> data;  // size N_x * n_y, index [i*n_y + j]

    PhysicalField() = default;
    explicit PhysicalField(const HalfPlaneGrid& g)
        : grid(g), data(static_cast<std::size_t>(g.N_x) * g.n_y(), 0.0) {}

    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * grid.n_y() + j]; }
    const double& at(int i, int j) const {
        return data[static_cast<std::size_t>(i) * grid.n_y() + j];
    }
};

// Exact DFT per y-row; phases are referred to x=0 so that real cosines give
// real coefficients. Sets the reality flag for real input.
SpectralField forward_transform(const PhysicalField& samples);
PhysicalField inverse_transform(const SpectralField& field);

// Sample a function on the grid and transform.
SpectralField transform_function(const HalfPlaneGrid& g,
                                 const std::function<double(double, double)>& f);

// int_0^ymax weight(y) |f_xi(y)| dy for one mode profile, by the grid rule.
double weighted_l1_y(const HalfPlaneGrid& g, const complexd* mode_profile,
                     const std::function<double(double)>& weight);

enum class Region { YGeq1, YLeq2, Annulus };

bool region_contains(Region r, double x, double y, const Vec2& center);

// Physical-space L1 norm over a region via inverse transform + 2D quadrature.
double region_l1_norm(const SpectralField& omega, Region region,
                      const Vec2& annulus_center = Vec2(0.0, 20.0));

}  // namespace vhp
