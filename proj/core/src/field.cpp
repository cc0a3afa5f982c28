#include "vhp/field.hpp"

#include <cmath>

#include "vhp/fft.hpp"

namespace vhp {

double SpectralField::conjugate_symmetry_defect() const {
    const int N = grid.N_x, ny = grid.n_y();
    double worst = 0.0;
    for (int k = 1; k < N; ++k) {
        const int kc = N - k;
        for (int j = 0; j < ny; ++j) {
            const complexd d = at(k, j) - std::conj(at(kc, j));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

namespace {

// phase factor (-1)^k translating the DFT origin from x_0=-L/2 to x=0
inline double origin_phase(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

SpectralField forward_transform(const PhysicalField& samples) {
    const HalfPlaneGrid& g = samples.grid;
    const int N = g.N_x, ny = g.n_y();
    SpectralField out(g, true);
    std::vector<complexd> row(N);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < N; ++i) row[i] = complexd(samples.at(i, j), 0.0);
        fft_forward(row);
        for (int k = 0; k < N; ++k) out.at(k, j) = row[k] * origin_phase(k);
    }
    return out;
}

PhysicalField inverse_transform(const SpectralField& field) {
    const HalfPlaneGrid& g = field.grid;
    const int N = g.N_x, ny = g.n_y();
    PhysicalField out(g);
    std::vector<complexd> row(N);
    for (int j = 0; j < ny; ++j) {
        for (int k = 0; k < N; ++k) row[k] = field.at(k, j) * origin_phase(k);
        fft_inverse(row);
        for (int i = 0; i < N; ++i) out.at(i, j) = row[i].real();
    }
    return out;
}

SpectralField transform_function(const HalfPlaneGrid& g,
                                 const std::function<double(double, double)>& f) {
    PhysicalField p(g);
    for (int i = 0; i < g.N_x; ++i)
        for (int j = 0; j < g.n_y(); ++j) p.at(i, j) = f(g.x_node(i), g.y_nodes[j]);
    return forward_transform(p);
}

double weighted_l1_y(const HalfPlaneGrid& g, const complexd* mode_profile,
                     const std::function<double(double)>& weight) {
    KahanSum s;
    for (int j = 0; j < g.n_y(); ++j) {
        const double a = std::abs(mode_profile[j]);
        if (std::isnan(a)) throw std::domain_error("weighted_l1_y: NaN in profile");
        s.add(g.y_weights[j] * weight(g.y_nodes[j]) * a);
    }
    return s.value();
}

bool region_contains(Region r, double x, double y, const Vec2& center) {
    switch (r) {
        case Region::YGeq1: return y >= 1.0;
        case Region::YLeq2: return y <= 2.0;
        case Region::Annulus: {
            const double d = (Vec2(x, y) - center).norm();
            return d >= 3.0 && d <= 6.0;
        }
    }
    return false;
}

double region_l1_norm(const SpectralField& omega, Region region, const Vec2& annulus_center) {
    const HalfPlaneGrid& g = omega.grid;
    PhysicalField p = inverse_transform(omega);
    const double dx = g.dx();
    KahanSum s;
    bool any = false;
    for (int j = 0; j < g.n_y(); ++j) {
        const double wy = g.y_weights[j];
        for (int i = 0; i < g.N_x; ++i) {
            if (!region_contains(region, g.x_node(i), g.y_nodes[j], annulus_center)) continue;
            any = true;
            s.add(dx * wy * std::abs(p.at(i, j)));
        }
    }
    if (!any) throw std::domain_error("region_l1_norm: region misses the grid");
    return s.value();
}

}  // namespace vhp
