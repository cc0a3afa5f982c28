#pragma once

#include <functional>
#include <vector>

#include "vhp/util.hpp"

namespace vhp {

// Uniform Cartesian grid in the self-similar variable eta, covering
// [-R, R]^2 with the origin on a node.
struct SelfSimilarGrid {
    double R = 12.0;
    double h = 0.125;
    int n = 0;  // nodes per side, odd

    SelfSimilarGrid() { init(); }
    SelfSimilarGrid(double R_, double h_) : R(R_), h(h_) { init(); }

    void init() {
        n = 2 * static_cast<int>(std::lround(R / h)) + 1;
        R = 0.5 * h * (n - 1);
    }
    double node(int i) const { return -R + h * i; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
    bool inside(double x, double y) const {
        return x >= -R && x <= R && y >= -R && y <= R;
    }
};

// Scalar profile W(eta) with a time label; center metadata lives with the
// vortex state that produced it.
struct SelfSimilarField {
    SelfSimilarGrid grid;
    std::vector<double> values;  // index [i*n + j], i along eta_1
    double t_label = 0.0;

    SelfSimilarField() = default;
    explicit SelfSimilarField(const SelfSimilarGrid& g, double t = 0.0)
        : grid(g), values(g.size(), 0.0), t_label(t) {}

    double& at(int i, int j) { return values[grid.idx(i, j)]; }
    double at(int i, int j) const { return values[grid.idx(i, j)]; }

    void fill(const std::function<double(double, double)>& f);
    // bicubic (Catmull-Rom) interpolation; clamps outside the grid to 0
    double interp(double x, double y) const;
};

struct VectorSelfSimilarField {
    SelfSimilarField u1, u2;
    VectorSelfSimilarField() = default;
    explicit VectorSelfSimilarField(const SelfSimilarGrid& g, double t = 0.0)
        : u1(g, t), u2(g, t) {}
};

// tilde-F operator: (f1,f2)(x,y) -> (-f1(x,-y), f2(x,-y))
VectorSelfSimilarField reflect(const VectorSelfSimilarField& F);
std::function<Vec2(Vec2)> reflect(const std::function<Vec2(Vec2)>& F);

// plain 2D quadrature (trapezoid is spectrally accurate for fields decaying
// inside the box)
double integrate(const SelfSimilarField& f);
double integrate_weighted(const SelfSimilarField& f,
                          const std::function<double(double, double)>& w);

// centered 4th-order derivatives (one-sided fallback near edges)
SelfSimilarField d_eta1(const SelfSimilarField& f);
SelfSimilarField d_eta2(const SelfSimilarField& f);
// Fokker-Planck operator L = Delta + eta.grad/2 + 1, 4th-order stencils
SelfSimilarField apply_oseen_L(const SelfSimilarField& f);

}  // namespace vhp
