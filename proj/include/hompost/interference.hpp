// interference.hpp: HOM visibility: time-resolved, post-selected windows, closed forms

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hompost/bath.hpp"
#include "hompost/dynamics.hpp"
#include "hompost/errors.hpp"
#include "hompost/quadrature.hpp"
#include "hompost/special_functions.hpp"

namespace hompost {

enum class CurveKind { TimeResolved, Windowed };

struct VisibilityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    CurveKind kind{CurveKind::TimeResolved};
};

inline constexpr double kWindowTolerance = 1e-8;

namespace detail {

inline void require_identical(const SourceConfig& src, const char* op) {
    if (!src.identical) throw DomainError(std::string(op) + " requires identical sources");
}

inline void require_window(double delta) {
    if (!(delta > 0.0) || std::isnan(delta)) throw DomainError("window width delta must be > 0");
}

// Upper limit of a τ integral: the window itself, or where e^{-gτ} < 1e-17.
inline double window_end(double g, double delta) {
    return std::isinf(delta) ? 40.0 / g : delta;
}

inline quad::Options window_options(double span, double abs_tol) {
    return quad::Options{.panel_width = std::max(1.0, span / 1000.0), .abs_tol = abs_tol};
}

// Fraction of the exponential(g) mass inside [0, Δ].
inline double window_mass(double g, double delta) {
    return std::isinf(delta) ? 1.0 : -std::expm1(-g * delta);
}

} // namespace detail

// ν(τ) = e^{-2Γ(τ)} for identical sources; independent of g.
inline double visibility(const SourceConfig& src, double tau) {
    detail::require_identical(src, "visibility");
    detail::require_nonnegative(tau, "tau");
    return std::exp(-total_decoherence(src, tau));
}

// ν = e^{-(Γ₁+Γ₂)} |cos φ(t₁, t₁+τ)|
inline double visibility_nonidentical(const SourceConfig& src, double t1, double tau) {
    detail::require_nonnegative(t1, "t1");
    detail::require_nonnegative(tau, "tau");
    const double mag = std::exp(-total_decoherence(src, tau));
    if (src.identical) return mag;
    return mag * std::abs(std::cos(source_phase(src, t1, tau)));
}

// ν′(Δ) as the e^{-gτ}-weighted window average of ν(τ):
//   ∫₀^Δ g e^{-gτ} e^{-2Γ(τ)} dτ / (1 − e^{-gΔ}).
// Δ = +∞ is the zero-time-resolution limit.
inline double windowed_visibility(const SourceConfig& src, double delta) {
    detail::require_identical(src, "windowed_visibility");
    detail::require_window(delta);
    const double g = src.g;
    const double end = detail::window_end(g, delta);
    const double mass = detail::window_mass(g, delta);
    const auto num = quad::integrate(
        [&](double tau) { return g * std::exp(-g * tau - total_decoherence(src, tau)); }, 0.0, end,
        detail::window_options(end, 1e-3 * kWindowTolerance * mass));
    return std::clamp(num.value / mass, 0.0, 1.0);
}

// ν′(Δ) = |p₊₊ − p₊₋| / (p₊₊ + p₊₋) with p₊± = ∫₀^Δ p(±|+,τ) dτ.
inline double windowed_visibility_ratio(const SourceConfig& src, double delta) {
    detail::require_identical(src, "windowed_visibility");
    detail::require_window(delta);
    const double end = detail::window_end(src.g, delta);
    const auto opts = detail::window_options(end, 1e-3 * kWindowTolerance * detail::window_mass(src.g, delta));
    const auto same = quad::integrate([&](double tau) { return second_click_density(src, 0.0, tau, true); },
                                      0.0, end, opts);
    const auto diff = quad::integrate([&](double tau) { return second_click_density(src, 0.0, tau, false); },
                                      0.0, end, opts);
    return std::abs(same.value - diff.value) / (same.value + diff.value);
}

// Joint (t₁, τ) post-selection for possibly non-identical sources: the
// |⟨same⟩ − ⟨different⟩| contrast of second clicks with τ ≤ Δ and t₁ ≤ t1_max,
// weighted by the first-click density 2g e^{-2gt₁}.
inline double windowed_visibility_nonidentical(const SourceConfig& src, double delta,
                                               double t1_max = std::numeric_limits<double>::infinity()) {
    detail::require_window(delta);
    detail::require_window(t1_max);
    const double g = src.g;
    const double tau_end = detail::window_end(g, delta);
    const double t1_end = detail::window_end(2.0 * g, t1_max);
    const double mass = detail::window_mass(g, delta) * detail::window_mass(2.0 * g, t1_max);
    const double tol = 1e-3 * kWindowTolerance * mass;
    const auto outer = quad::integrate(
        [&](double t1) {
            const auto inner = quad::integrate(
                [&](double tau) { return g * std::exp(-g * tau) * click_contrast(src, t1, tau); }, 0.0, tau_end,
                detail::window_options(tau_end, tol));
            return 2.0 * g * std::exp(-2.0 * g * t1) * inner.value;
        },
        0.0, t1_end, detail::window_options(t1_end, tol));
    return std::clamp(std::abs(outer.value) / mass, 0.0, 1.0);
}

// θ(1 − e^{-2AπΔ/θ}) / (2AπΔ): the g → 0 window average of e^{-2Γ_M}.
inline double windowed_visibility_markovian(const bath::BathSpec& bath, double delta) {
    if (bath.family != bath::Family::Markovian)
        throw UnsupportedError("windowed_visibility_markovian requires a markovian bath");
    detail::require_window(delta);
    if (std::isinf(delta)) return bath.coupling == 0.0 ? 1.0 : 0.0;
    const double x = 2.0 * bath.coupling * std::numbers::pi * delta / bath.theta;
    if (x < 1e-6) return 1.0 - x / 2.0 + x * x / 6.0;
    return -std::expm1(-x) / x;
}

// Zero-temperature ohmic window average (1/Δ)∫₀^Δ (1+v²)^{-2A} dv, the real
// form of B_{-Δ²}(1/2, 1−2A) / (2iΔ).
inline double windowed_visibility_ohmic_lowT(const bath::BathSpec& bath, double delta) {
    if (bath.family != bath::Family::Ohmic)
        throw UnsupportedError("windowed_visibility_ohmic_lowT requires an ohmic bath");
    detail::require_window(delta);
    if (std::isinf(delta)) throw DomainError("windowed_visibility_ohmic_lowT requires a finite window");
    const double A = bath.coupling;
    if (A == 0.0) return 1.0;
    if (delta < 1e-6) return 1.0 - 2.0 * A * delta * delta / 3.0;
    if (A == 0.5) return std::atan(delta) / delta;
    const auto r = quad::integrate([=](double v) { return std::pow(1.0 + v * v, -2.0 * A); }, 0.0, delta,
                                   quad::Options{.panel_width = 1.0, .abs_tol = 1e-3 * kWindowTolerance * delta});
    return r.value / delta;
}

// The same quantity through the incomplete-Beta expression, B_{-Δ²}(1/2, 1−2A)/(2iΔ).
// Series evaluation, so limited to Δ < 1.
inline double ohmic_lowT_beta_form(const bath::BathSpec& bath, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("incomplete-Beta series form requires 0 < delta < 1");
    const std::complex<double> b = special::incomplete_beta({-delta * delta, 0.0}, 0.5, 1.0 - 2.0 * bath.coupling);
    return (b / std::complex<double>(0.0, 2.0 * delta)).real();
}

// Long-time visibility floor e^{-2Γ(∞)} of a superohmic bath.
inline double superohmic_asymptote(const bath::BathSpec& bath, bath::GammaModel model = bath::GammaModel::Exact) {
    return std::exp(-2.0 * bath::superohmic_gamma_limit(bath, model));
}

inline VisibilityCurve sample_curve(CurveKind kind, const SourceConfig& src, const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0)) throw DomainError("curve grid points must be >= 0");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("curve grid must be strictly increasing");
    }
    VisibilityCurve curve{grid, {}, kind};
    curve.values.reserve(grid.size());
    for (double x : grid)
        curve.values.push_back(kind == CurveKind::TimeResolved ? visibility(src, x) : windowed_visibility(src, x));
    return curve;
}

} // namespace hompost
