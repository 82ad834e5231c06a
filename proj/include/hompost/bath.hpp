// bath.hpp: Spectral densities, decoherence functions Γ(τ) and phase functions Λ, φ
//
// Units: ω_c ≡ 1. Times are ω_c·t, the inverse temperature is θ = ω_c·β and
// the spectral density is J(ω) = A·ωⁿ·e^{-ω}.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hompost/errors.hpp"
#include "hompost/quadrature.hpp"
#include "hompost/special_functions.hpp"

namespace hompost::bath {

enum class Family { Ohmic, Superohmic, Markovian, PowerLaw };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::Ohmic: return "ohmic";
        case Family::Superohmic: return "superohmic";
        case Family::Markovian: return "markovian";
        case Family::PowerLaw: return "powerlaw";
    }
    return "?";
}

struct BathSpec {
    Family family{Family::Ohmic};
    double coupling{0.5};  // A
    double theta{10.0};    // ω_c·β
    double exponent{1.0};  // n; only free for PowerLaw

    static BathSpec ohmic(double A, double theta) { return make({Family::Ohmic, A, theta, 1.0}); }
    static BathSpec superohmic(double A, double theta) { return make({Family::Superohmic, A, theta, 3.0}); }
    static BathSpec markovian(double A, double theta) { return make({Family::Markovian, A, theta, 1.0}); }
    static BathSpec power_law(double n, double A, double theta) { return make({Family::PowerLaw, A, theta, n}); }

    // Throws DomainError unless A >= 0, θ > 0 and n > 0 (all finite).
    void validate() const {
        if (!(std::isfinite(coupling) && coupling >= 0.0))
            throw DomainError("bath coupling A must be finite and >= 0");
        if (!(std::isfinite(theta) && theta > 0.0))
            throw DomainError("bath theta = omega_c*beta must be finite and > 0");
        if (!(std::isfinite(exponent) && exponent > 0.0))
            throw DomainError("spectral exponent n must be finite and > 0");
    }

    bool has_spectral_density() const noexcept { return family != Family::Markovian; }

    bool operator==(const BathSpec&) const = default;

private:
    static BathSpec make(BathSpec b) {
        b.validate();
        return b;
    }
};

// Which closed form gamma_closed evaluates.
//   Exact       : exact evaluation of ∫(J/ω²)(1−cos ωτ)coth(θω/2)dω with the
//                  e^{-ω} cutoff kept everywhere (special functions).
//   ScalingLimit: the figure-caption forms: cutoff dropped from the thermal
//                  part (θ ≫ 1), zero-temperature ohmic term A/2·ln(1+τ²).
enum class GammaModel { Exact, ScalingLimit };

enum class GammaMethod { ClosedForm, Quadrature };

struct DecoherenceValue {
    double value{0.0};
    GammaMethod method{GammaMethod::ClosedForm};
    double est_abs_error{0.0};
};

inline constexpr double kGammaTolerance = 1e-9;

// J(ω) = A ωⁿ e^{-ω}
inline double spectral_density(const BathSpec& bath, double omega) {
    if (!bath.has_spectral_density())
        throw UnsupportedError("markovian bath is defined by its rate law and has no spectral density");
    if (!(omega >= 0.0)) throw DomainError("spectral_density requires omega >= 0");
    if (omega == 0.0) return 0.0;
    return bath.coupling * std::pow(omega, bath.exponent) * std::exp(-omega);
}

namespace detail {

inline void require_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + " must be finite and >= 0");
}

inline void require_integrable(const BathSpec& bath) {
    if (!bath.has_spectral_density())
        throw UnsupportedError("quadrature requires a spectral density; markovian bath has none");
    if (bath.exponent < 1.0)
        throw DivergenceError("decoherence integral diverges for spectral exponent n < 1");
}

// Upper integration limit W such that bound(W) < 1e-13.
template <class Bound>
double cutoff_limit(Bound&& bound) {
    double w = 20.0;
    while (bound(w) > 1e-13 && w < 2000.0) w += 1.0;
    return w;
}

// Integrates an ω-integrand over (0, W]: tanh-sinh on the first panel
// (robust to ω^{n-1} endpoint behaviour for non-integer n), panel-wise
// Gauss–Kronrod on the rest.
template <class F>
quad::Result integrate_frequency(F&& f, double w_max, double panel) {
    quad::Result out;
    const double first = std::min(panel, w_max);
    // Building the abscissa tables is the expensive part; one per thread.
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    out.value = ts.integrate(f, 0.0, first, 1e-13, &err);
    out.abs_error = err;
    if (w_max > first) {
        const auto rest = quad::integrate(f, first, w_max, quad::Options{.panel_width = panel, .abs_tol = 1e-11});
        out.value += rest.value;
        out.abs_error += rest.abs_error;
    }
    return out;
}

// ln(sinh x / x) for x >= 0 without overflow or cancellation.
inline double log_sinhc(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return x2 / 6.0 - x2 * x2 / 180.0 + x2 * x2 * x2 / 2835.0;
    }
    if (x > 20.0) return x - std::numbers::ln2 - std::log(x) + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x) / x);
}

// csch²(y) − 1/y², jointly finite at y → 0.
inline double csch2_minus_inv2(double y) {
    if (y < 5e-2) {
        const double y2 = y * y;
        return -1.0 / 3.0 + y2 / 15.0 - 2.0 * y2 * y2 / 189.0 + y2 * y2 * y2 / 675.0;
    }
    const double s = std::sinh(y);
    return 1.0 / (s * s) - 1.0 / (y * y);
}

} // namespace detail

// Γ(τ) = ∫₀^∞ (J(ω)/ω²)(1 − cos ωτ) coth(θω/2) dω by adaptive quadrature.
// Throws NumericError if the estimated absolute error exceeds 1e-9.
inline DecoherenceValue gamma_quadrature(const BathSpec& bath, double tau) {
    detail::require_time(tau, "tau");
    detail::require_integrable(bath);
    DecoherenceValue out{0.0, GammaMethod::Quadrature, 0.0};
    if (tau == 0.0 || bath.coupling == 0.0) return out;

    const double A = bath.coupling;
    const double n = bath.exponent;
    const double th = bath.theta;

    auto integrand = [=](double w) {
        if (w <= 0.0) return A * (n == 1.0 ? 1.0 : 0.0) * tau * tau / th;
        if (w * tau < 1e-3 && th * w < 1e-3) {
            // (1−cos ωτ)coth(θω/2) ≈ (τ²ω/θ)(1 − ω²τ²/12)(1 + θ²ω²/12)
            const double w2 = w * w;
            return A * std::pow(w, n - 1.0) * std::exp(-w) * (tau * tau / th)
                 * (1.0 - w2 * tau * tau / 12.0) * (1.0 + th * th * w2 / 12.0);
        }
        const double s = std::sin(0.5 * w * tau);
        return A * std::pow(w, n - 2.0) * std::exp(-w) * (2.0 * s * s) / std::tanh(0.5 * th * w);
    };

    // ∫_W^∞ ω^{n−2} e^{-ω} dω ≤ 2 W^{n−2} e^{-W} for W ≥ 2(n−2); (1−cos) ≤ 2; coth decreasing.
    auto tail_bound = [&](double w) {
        return 4.0 * A * std::pow(w, n - 2.0) * std::exp(-w) / std::tanh(0.5 * th * w);
    };
    const double w_max = detail::cutoff_limit(tail_bound);
    const double tail = tail_bound(w_max);

    const auto r = detail::integrate_frequency(integrand, w_max, std::min(1.0, std::numbers::pi / tau));
    out.value = std::max(r.value, 0.0);
    out.est_abs_error = r.abs_error + tail;
    if (!(out.est_abs_error <= kGammaTolerance) || !std::isfinite(r.value))
        throw NumericError("gamma_quadrature did not converge", out.est_abs_error);
    return out;
}

// Closed-form Γ(τ) for the ohmic, superohmic and Markovian families.
inline DecoherenceValue gamma_closed(const BathSpec& bath, double tau, GammaModel model = GammaModel::Exact) {
    detail::require_time(tau, "tau");
    const double A = bath.coupling;
    const double th = bath.theta;
    DecoherenceValue out{0.0, GammaMethod::ClosedForm, 0.0};
    if (tau == 0.0 || A == 0.0) return out;

    switch (bath.family) {
        case Family::Markovian:
            out.value = A * std::numbers::pi * tau / th;
            break;
        case Family::Ohmic: {
            const double vacuum = 0.5 * A * std::log1p(tau * tau);
            const double thermal = model == GammaModel::Exact
                ? 2.0 * A * special::log_gamma_abs_drop(1.0 + 1.0 / th, tau / th)
                : A * detail::log_sinhc(std::numbers::pi * tau / th);
            out.value = vacuum + thermal;
            break;
        }
        case Family::Superohmic: {
            const double t2 = tau * tau;
            const double vacuum = A * t2 * (3.0 + t2) / ((1.0 + t2) * (1.0 + t2));
            double thermal = 0.0;
            if (model == GammaModel::Exact) {
                const double a = 1.0 + 1.0 / th;
                thermal = 2.0 * A / (th * th)
                        * (special::trigamma({a, 0.0}).real() - special::trigamma({a, tau / th}).real());
            } else {
                // A(π²/(3θ²) − 1/τ² + π² csch²(πτ/θ)/θ²) = (Aπ²/θ²)(1/3 + csch²y − 1/y²), y = πτ/θ
                const double y = std::numbers::pi * tau / th;
                thermal = A * std::numbers::pi * std::numbers::pi / (th * th)
                        * (1.0 / 3.0 + detail::csch2_minus_inv2(y));
            }
            out.value = vacuum + thermal;
            break;
        }
        case Family::PowerLaw:
            throw UnsupportedError("no closed form for general power-law baths; use gamma_quadrature");
    }
    return out;
}

// Closed form where one exists, quadrature otherwise.
inline DecoherenceValue gamma(const BathSpec& bath, double tau, GammaModel model = GammaModel::Exact) {
    if (bath.family == Family::PowerLaw) return gamma_quadrature(bath, tau);
    return gamma_closed(bath, tau, model);
}

// lim_{τ→∞} Γ(τ) for a superohmic bath.
inline double superohmic_gamma_limit(const BathSpec& bath, GammaModel model = GammaModel::Exact) {
    if (bath.family != Family::Superohmic)
        throw UnsupportedError("finite long-time decoherence limit only exists for the superohmic family");
    const double th = bath.theta;
    if (model == GammaModel::Exact)
        return bath.coupling * (1.0 + 2.0 * special::trigamma({1.0 + 1.0 / th, 0.0}).real() / (th * th));
    return bath.coupling * (1.0 + std::numbers::pi * std::numbers::pi / (3.0 * th * th));
}

// Λ(t₁,t₂) = ∫₀^∞ (J(ω)/ω²)(ωτ + 2 sin ωt₁ − 2 sin ωt₂ + sin ωτ) dω, τ = t₂ − t₁.
inline double lambda_phase(const BathSpec& bath, double t1, double t2) {
    detail::require_time(t1, "t1");
    detail::require_time(t2, "t2");
    if (t2 < t1) throw DomainError("lambda_phase requires t1 <= t2");
    detail::require_integrable(bath);
    if (t1 == t2 || bath.coupling == 0.0) return 0.0;

    const double A = bath.coupling;
    const double n = bath.exponent;
    const double tau = t2 - t1;

    auto integrand = [=](double w) {
        if (w <= 0.0) return 0.0;
        double bracket;
        if (w * t2 < 1e-3) {
            const double w3 = w * w * w;
            bracket = -(2.0 * t1 * t1 * t1 - 2.0 * t2 * t2 * t2 + tau * tau * tau) * w3 / 6.0
                    + (2.0 * std::pow(t1, 5) - 2.0 * std::pow(t2, 5) + std::pow(tau, 5)) * w3 * w * w / 120.0;
        } else {
            bracket = w * tau + 2.0 * std::sin(w * t1) - 2.0 * std::sin(w * t2) + std::sin(w * tau);
        }
        return A * std::pow(w, n - 2.0) * std::exp(-w) * bracket;
    };

    const double w_max = detail::cutoff_limit([&](double w) {
        return 2.0 * A * std::pow(w, std::max(n - 1.0, 0.0)) * std::exp(-w) * (tau + 5.0);
    });
    const double tail = 2.0 * A * std::pow(w_max, std::max(n - 1.0, 0.0)) * std::exp(-w_max) * (tau + 5.0);
    const auto r = detail::integrate_frequency(integrand, w_max, std::min(1.0, std::numbers::pi / t2));
    if (!(r.abs_error + tail <= kGammaTolerance) || !std::isfinite(r.value))
        throw NumericError("lambda_phase did not converge", r.abs_error + tail);
    return r.value;
}

// Closed form of the same integral:
//   n = 1: A(τ + 2 atan t₁ − 2 atan t₂ + atan τ)
//   n > 1: A[Γ(n)τ + Γ(n−1)(2s(t₁) − 2s(t₂) + s(τ))], s(t) = sin((n−1)atan t)/(1+t²)^{(n−1)/2}
inline double lambda_phase_closed(const BathSpec& bath, double t1, double t2) {
    detail::require_time(t1, "t1");
    detail::require_time(t2, "t2");
    if (t2 < t1) throw DomainError("lambda_phase requires t1 <= t2");
    detail::require_integrable(bath);
    if (t1 == t2 || bath.coupling == 0.0) return 0.0;
    const double A = bath.coupling;
    const double n = bath.exponent;
    const double tau = t2 - t1;
    if (n == 1.0)
        return A * (tau + 2.0 * std::atan(t1) - 2.0 * std::atan(t2) + std::atan(tau));
    auto s = [m = n - 1.0](double t) { return std::sin(m * std::atan(t)) / std::pow(1.0 + t * t, 0.5 * m); };
    return A * (std::tgamma(n) * tau + std::tgamma(n - 1.0) * (2.0 * s(t1) - 2.0 * s(t2) + s(tau)));
}

enum class PhaseMethod { Quadrature, ClosedForm };

// φ(t₁,t₂) = Λ₂ − Λ₁; exactly zero for identical baths.
inline double phi_phase(const BathSpec& bath1, const BathSpec& bath2, double t1, double t2,
                        PhaseMethod method = PhaseMethod::Quadrature) {
    detail::require_time(t1, "t1");
    detail::require_time(t2, "t2");
    if (t2 < t1) throw DomainError("phi_phase requires t1 <= t2");
    if (bath1 == bath2) return 0.0;
    auto lam = method == PhaseMethod::Quadrature ? &lambda_phase : &lambda_phase_closed;
    return lam(bath2, t1, t2) - lam(bath1, t1, t2);
}

} // namespace hompost::bath
