#include "vhp/selfsim.hpp"

#include <algorithm>
#include <cmath>

namespace vhp {

void SelfSimilarField::fill(const std::function<double(double, double)>& f) {
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) at(i, j) = f(grid.node(i), grid.node(j));
}

namespace {

inline double catmull_rom(double fm1, double f0, double f1, double f2, double s) {
    return f0 + 0.5 * s * (f1 - fm1 + s * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                           s * (3.0 * (f0 - f1) + f2 - fm1)));
}

}  // namespace

double SelfSimilarField::interp(double x, double y) const {
    const auto& g = grid;
    if (!g.inside(x, y)) return 0.0;
    double fi = (x + g.R) / g.h, fj = (y + g.R) / g.h;
    int i0 = std::clamp(static_cast<int>(std::floor(fi)), 1, g.n - 3);
    int j0 = std::clamp(static_cast<int>(std::floor(fj)), 1, g.n - 3);
    const double sx = fi - i0, sy = fj - j0;
    double col[4];
    for (int a = -1; a <= 2; ++a) {
        col[a + 1] = catmull_rom(at(i0 + a, j0 - 1), at(i0 + a, j0), at(i0 + a, j0 + 1),
                                 at(i0 + a, j0 + 2), sy);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], sx);
}

VectorSelfSimilarField reflect(const VectorSelfSimilarField& F) {
    VectorSelfSimilarField out(F.u1.grid, F.u1.t_label);
    const int n = F.u1.grid.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int jm = n - 1 - j;  // eta_2 -> -eta_2
            out.u1.at(i, j) = -F.u1.at(i, jm);
            out.u2.at(i, j) = F.u2.at(i, jm);
        }
    return out;
}

std::function<Vec2(Vec2)> reflect(const std::function<Vec2(Vec2)>& F) {
    return [F](Vec2 p) {
        Vec2 v = F(Vec2(p.x, -p.y));
        return Vec2(-v.x, v.y);
    };
}

double integrate(const SelfSimilarField& f) {
    KahanSum s;
    for (double v : f.values) s.add(v);
    return s.value() * f.grid.h * f.grid.h;
}

double integrate_weighted(const SelfSimilarField& f,
                          const std::function<double(double, double)>& w) {
    KahanSum s;
    for (int i = 0; i < f.grid.n; ++i)
        for (int j = 0; j < f.grid.n; ++j)
            s.add(f.at(i, j) * w(f.grid.node(i), f.grid.node(j)));
    return s.value() * f.grid.h * f.grid.h;
}

namespace {

// 4th-order first and second derivative along one index
template <typename Get>
void stencil_d1_d2(const Get& fv, int n, double h, int c, double& d1, double& d2) {
    auto f = [&](int k) { return fv(std::clamp(k, 0, n - 1)); };
    if (c >= 2 && c <= n - 3) {
        d1 = (f(c - 2) - 8.0 * f(c - 1) + 8.0 * f(c + 1) - f(c + 2)) / (12.0 * h);
        d2 = (-f(c - 2) + 16.0 * f(c - 1) - 30.0 * f(c) + 16.0 * f(c + 1) - f(c + 2)) /
             (12.0 * h * h);
    } else {
        // fields of interest vanish near the frame; 2nd order is enough here
        d1 = (f(c + 1) - f(c - 1)) / (2.0 * h);
        d2 = (f(c + 1) - 2.0 * f(c) + f(c - 1)) / (h * h);
    }
}

}  // namespace

SelfSimilarField d_eta1(const SelfSimilarField& f) {
    SelfSimilarField out(f.grid, f.t_label);
    const int n = f.grid.n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double d1, d2;
            stencil_d1_d2([&](int k) { return f.at(k, j); }, n, f.grid.h, i, d1, d2);
            out.at(i, j) = d1;
        }
    return out;
}

SelfSimilarField d_eta2(const SelfSimilarField& f) {
    SelfSimilarField out(f.grid, f.t_label);
    const int n = f.grid.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d1, d2;
            stencil_d1_d2([&](int k) { return f.at(i, k); }, n, f.grid.h, j, d1, d2);
            out.at(i, j) = d1;
        }
    return out;
}

SelfSimilarField apply_oseen_L(const SelfSimilarField& f) {
    SelfSimilarField out(f.grid, f.t_label);
    const int n = f.grid.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dx1, dxx, dy1, dyy;
            stencil_d1_d2([&](int k) { return f.at(k, j); }, n, f.grid.h, i, dx1, dxx);
            stencil_d1_d2([&](int k) { return f.at(i, k); }, n, f.grid.h, j, dy1, dyy);
            out.at(i, j) = dxx + dyy +
                           0.5 * (f.grid.node(i) * dx1 + f.grid.node(j) * dy1) + f.at(i, j);
        }
    return out;
}

}  // namespace vhp
