// Iterative radix-2 FFT for power-of-two complex fields.
// Forward is unnormalized, inverse carries the 1/N factor, so
// inverse(forward(x)) == x up to roundoff.
#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "satnls/core.hpp"

namespace satnls::fft {

namespace detail {

// Twiddles are taken from a table filled with direct std::polar calls;
// a running-product recurrence would accumulate O(N·eps) phase error.
inline void transform(ComplexField& a, bool invert) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n))
        throw ConfigError("fft length must be a power of two, got " +
                          std::to_string(n));
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = invert ? 1.0 : -1.0;
    ComplexField twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                         static_cast<double>(k) /
                                         static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t block = 0; block < n; block += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex w = twiddle[k * stride];
                const Complex u = a[block + k];
                const Complex v = a[block + k + len / 2] * w;
                a[block + k] = u + v;
                a[block + k + len / 2] = u - v;
            }
        }
    }

    if (invert) {
        const double scale = 1.0 / static_cast<double>(n);
        for (Complex& z : a) z *= scale;
    }
}

}  // namespace detail

/// X_k = sum_j x_j exp(-2*pi*i*j*k/N), in place.
inline void forward(ComplexField& a) { detail::transform(a, false); }

/// x_j = (1/N) sum_k X_k exp(+2*pi*i*j*k/N), in place.
inline void inverse(ComplexField& a) { detail::transform(a, true); }

/// Signed mode index n in [-N/2, N/2) for transform bin k.
inline long long mode_index(std::size_t bin, std::size_t points) {
    const long long n = static_cast<long long>(bin);
    const long long half = static_cast<long long>(points / 2);
    return n < half ? n : n - static_cast<long long>(points);
}

}  // namespace satnls::fft
