#include "vhp/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace vhp {

namespace {

// Integral over [x0,x1] of the Lagrange basis through abscissae xs, as
// weights on those four (or three/two) points.
template <std::size_t M>
std::array<double, M> lagrange_cell_weights(const std::array<double, M>& xs, double x0, double x1) {
    // integrate each basis polynomial exactly with 4-point Gauss-Legendre
    static const double gp[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    std::array<double, M> w{};
    const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
    for (std::size_t b = 0; b < M; ++b) {
        double acc = 0.0;
        for (int g = 0; g < 4; ++g) {
            const double x = mid + half * gp[g];
            double val = 1.0;
            for (std::size_t j = 0; j < M; ++j)
                if (j != b) val *= (x - xs[j]) / (xs[b] - xs[j]);
            acc += gw[g] * val;
        }
        w[b] = acc * half;
    }
    return w;
}

}  // namespace

std::vector<double> cubic_quadrature_weights(const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    if (n == 2) {
        const double h = nodes[1] - nodes[0];
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    if (n == 3) {
        std::array<double, 3> xs{nodes[0], nodes[1], nodes[2]};
        auto cw = lagrange_cell_weights<3>(xs, nodes[0], nodes[2]);
        for (int j = 0; j < 3; ++j) w[j] += cw[j];
        return w;
    }
    for (int c = 0; c + 1 < n; ++c) {
        int base = std::clamp(c - 1, 0, n - 4);
        std::array<double, 4> xs{nodes[base], nodes[base + 1], nodes[base + 2], nodes[base + 3]};
        auto cw = lagrange_cell_weights<4>(xs, nodes[c], nodes[c + 1]);
        for (int j = 0; j < 4; ++j) w[base + j] += cw[j];
    }
    return w;
}

double HalfPlaneGrid::integrate_y(const std::vector<double>& f) const {
    KahanSum s;
    for (std::size_t j = 0; j < y_nodes.size(); ++j) s.add(y_weights[j] * f[j]);
    return s.value();
}

int HalfPlaneGrid::lower_node(double y) const {
    auto it = std::lower_bound(y_nodes.begin(), y_nodes.end(), y);
    return static_cast<int>(it - y_nodes.begin());
}

HalfPlaneGrid make_grid(const GridParams& p) {
    HalfPlaneGrid g;
    g.L_x = p.L_x;
    g.N_x = p.N_x;
    require(p.N_x % 2 == 0, "N_x must be even");

    const double h_fine = std::min(std::sqrt(p.nu) / 8.0, 0.05);
    const double y_fine = std::min(4.0 * std::sqrt(p.nu) * p.z_cap, p.y_max);

    std::vector<double>& ys = g.y_nodes;
    ys.push_back(0.0);
    double h = h_fine;
    while (ys.back() + h < y_fine) ys.push_back(ys.back() + h);
    // geometric transition toward the coarse spacing
    while (ys.back() < p.y_max && h < p.coarse_dy) {
        h = std::min(h * 1.06, p.coarse_dy);
        ys.push_back(std::min(ys.back() + h, p.y_max));
    }
    while (ys.back() < p.y_max - 1e-12) ys.push_back(std::min(ys.back() + p.coarse_dy, p.y_max));
    ys.back() = p.y_max;

    g.y_weights = cubic_quadrature_weights(ys);
    return g;
}

HalfPlaneGrid make_uniform_grid(double L_x, int N_x, double y_max, double dy) {
    HalfPlaneGrid g;
    g.L_x = L_x;
    g.N_x = N_x;
    const int n = static_cast<int>(std::lround(y_max / dy));
    for (int j = 0; j <= n; ++j) g.y_nodes.push_back(y_max * static_cast<double>(j) / n);
    g.y_weights = cubic_quadrature_weights(g.y_nodes);
    return g;
}

double smoothstep_bump(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

}  // namespace vhp
