// fft.hpp -- minimal power-of-two FFT and exact linear convolution.
//
// The library only ever transforms zero-padded coefficient vectors whose
// length it chooses itself, so a radix-2 iterative kernel is all we need.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace goodbsq {

using cdouble = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey. |a| must be a power of two.
// inverse=true applies the conjugate transform including the 1/n factor.
inline void fft_pow2(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cdouble u = a[i + k];
                cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

// Linear convolution of two coefficient sequences, computed through
// transforms padded to at least |a|+|b|-1 so no wrap-around occurs.
inline std::vector<cdouble> convolve_linear(const std::vector<cdouble>& a,
                                            const std::vector<cdouble>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(out_len);
    std::vector<cdouble> fa(m, cdouble(0.0, 0.0)), fb(m, cdouble(0.0, 0.0));
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    fa.resize(out_len);
    return fa;
}

} // namespace goodbsq
