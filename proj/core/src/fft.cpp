#include "vhp/fft.hpp"

namespace vhp {

namespace {

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

void fft_radix2(std::vector<complexd>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const complexd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            complexd w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                complexd u = a[i + j];
                complexd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void dft_naive(std::vector<complexd>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<complexd> out(n, complexd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * kPi * static_cast<double>(j * k % n) / static_cast<double>(n);
            out[k] += a[j] * complexd(std::cos(ang), std::sin(ang));
        }
    }
    a = std::move(out);
}

}  // namespace

void dft(std::vector<complexd>& a, int sign) {
    if (a.size() <= 1) return;
    if (is_pow2(a.size()))
        fft_radix2(a, sign);
    else
        dft_naive(a, sign);
}

void fft_forward(std::vector<complexd>& a) {
    dft(a, -1);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= inv;
}

void fft_inverse(std::vector<complexd>& a) { dft(a, +1); }

}  // namespace vhp
