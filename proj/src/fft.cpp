#include "hawkes/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hawkes {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

std::vector<cplx> dft(const std::vector<cplx>& x, bool inverse) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a = x;
        fft_pow2(a, inverse);
        return a;
    }

    // Bluestein: X_k = conj(w_k) * sum_j (x_j conj(w_j)) w_{k-j}, w_m = e^{i pi m^2 / n}
    // for the forward transform, conjugate chirp for the inverse.
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<cplx> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        // m^2 mod 2n, avoids precision loss for large m
        const std::size_t m2 = (m * m) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(m2) / static_cast<double>(n);
        w[m] = cplx(std::cos(ang), std::sin(ang));
    }

    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> a(m, cplx(0, 0)), b(m, cplx(0, 0));
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * std::conj(w[j]);
    b[0] = w[0];
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = w[j];

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);

    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(w[k]) * a[k];
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : out) z *= inv;
    }
    return out;
}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("circular_convolve: size mismatch");
    const std::size_t n = a.size();
    std::vector<cplx> fa(n), fb(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = cplx(a[i], 0.0);
        fb[i] = cplx(b[i], 0.0);
    }
    fa = dft(fa, false);
    fb = dft(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fa = dft(fa, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> linear_convolve_fft(const std::vector<double>& a,
                                        const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_n = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(out_n);
    std::vector<cplx> fa(m, cplx(0, 0)), fb(m, cplx(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = cplx(a[i], 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = cplx(b[i], 0.0);
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    std::vector<double> out(out_n);
    for (std::size_t i = 0; i < out_n; ++i) out[i] = fa[i].real();
    return out;
}

} // namespace hawkes
