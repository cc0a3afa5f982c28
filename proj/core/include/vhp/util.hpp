#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace vhp {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // a^perp = (-a_y, a_x), matching grad^perp = (-d_y, d_x)
    Vec2 perp() const { return {-y, x}; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Scaled complementary error function exp(x^2) erfc(x).
// Safe for large positive x where erfc underflows.
inline double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(x) = 2 exp(x^2) - erfcx(-x); only meaningful for moderate |x|
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    // asymptotic series, relative error < 1e-14 for x >= 25
    const double ix2 = 1.0 / (x * x);
    double s = 1.0 + ix2 * (-0.5 + ix2 * (0.75 + ix2 * (-1.875 + ix2 * 6.5625)));
    return s / (x * std::sqrt(kPi));
}

// Kahan-compensated accumulator for long quadrature sums.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Minimal fork-join helper; runs body(i) for i in [0, n).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned threads = 0) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic_size_t next{0};
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace vhp
