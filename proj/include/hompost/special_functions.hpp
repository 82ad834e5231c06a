// special_functions.hpp: complex-argument log-gamma, trigamma and incomplete Beta

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace hompost::special {

namespace detail {

// Shift so that Re(w) >= kShift before using an asymptotic series; the
// truncation error of both series below is then < 1e-16.
inline constexpr double kShift = 20.0;

inline int shift_count(double x) {
    return x >= kShift ? 0 : static_cast<int>(std::ceil(kShift - x));
}

} // namespace detail

// ln|Γ(x)| - ln|Γ(x + iy)| for x > 0. Evaluated as a difference term by term
// so that small |y| keeps full absolute precision.
inline double log_gamma_abs_drop(double x, double y) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma_abs_drop requires x > 0");
    if (y == 0.0) return 0.0;
    const int n = detail::shift_count(x);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = y / (x + k);
        acc += 0.5 * std::log1p(r * r);
    }
    const double w = x + n;
    // Re[ln Γ(w + iy)] − ln Γ(w) from Stirling's formula, with the leading
    // terms combined analytically so nothing O(w ln w) is subtracted.
    const double lead = (w - 0.5) * 0.5 * std::log1p((y / w) * (y / w)) - y * std::atan2(y, w);
    // Correction series difference: with u = 1/(w+iy), v = 1/w, u − v = −iy·u·v exactly and
    // u^k − v^k = (u − v) Σ_{j<k} u^j v^{k−1−j}.
    const std::complex<double> u = 1.0 / std::complex<double>(w, y);
    const double v = 1.0 / w;
    const std::complex<double> du = std::complex<double>(0.0, -y) * u * v;
    auto power_drop = [&](int k) {
        std::complex<double> sum = 0.0, up = 1.0;
        for (int j = 0; j < k; ++j, up *= u) sum += up * std::pow(v, k - 1 - j);
        return (du * sum).real();
    };
    const double tail = power_drop(1) / 12.0 - power_drop(3) / 360.0 + power_drop(5) / 1260.0 - power_drop(7) / 1680.0;
    return acc - (lead + tail);
}

// ln|Γ(z)| for Re z > 0.
inline double log_gamma_abs(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw std::domain_error("log_gamma_abs requires Re z > 0");
    return std::lgamma(z.real()) - log_gamma_abs_drop(z.real(), z.imag());
}

// Trigamma ψ₁(z) = Σ_{k>=0} 1/(z+k)² for Re z > 0.
inline std::complex<double> trigamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw std::domain_error("trigamma requires Re z > 0");
    const int n = detail::shift_count(z.real());
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const std::complex<double> d = z + static_cast<double>(k);
        acc += 1.0 / (d * d);
    }
    const std::complex<double> w = z + static_cast<double>(n);
    const std::complex<double> inv = 1.0 / w;
    const std::complex<double> inv2 = inv * inv;
    // 1/w + 1/(2w²) + Σ B_{2k}/w^{2k+1}
    const std::complex<double> bern =
        inv2 * inv * (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0)))));
    return acc + inv + 0.5 * inv2 + bern;
}

// Incomplete Beta B_z(a, b) = ∫₀^z t^{a-1}(1-t)^{b-1} dt on the principal branch,
// by the series z^a Σ (1-b)_k z^k / (k! (a+k)). Requires |z| < 1 and a > 0.
inline std::complex<double> incomplete_beta(std::complex<double> z, double a, double b) {
    if (!(std::abs(z) < 1.0)) throw std::domain_error("incomplete_beta series requires |z| < 1");
    if (!(a > 0.0)) throw std::domain_error("incomplete_beta requires a > 0");
    std::complex<double> term = 1.0; // (1-b)_k z^k / k!
    std::complex<double> sum = 1.0 / a;
    for (int k = 1; k < 10000; ++k) {
        term *= (k - b) * z / static_cast<double>(k);
        const std::complex<double> add = term / (a + k);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return std::pow(z, a) * sum;
}

} // namespace hompost::special
