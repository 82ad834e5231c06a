// dynamics.hpp: Solved two-source quantum-jump dynamics
//
// Two excited emitters |ee⟩ decay at rate g into a 50:50 beam splitter whose
// outputs are watched by detectors D₊ and D₋. Between clicks the evolution is
// the no-jump propagator; a click applies c_± = √(g/2)(|g⟩₁⟨e| ± |g⟩₂⟨e|).
// After the first click the reduced state lives in span{|ge⟩, |eg⟩}:
//
//   ρ̃ = (e^{-gτ}/2) [ |ge⟩⟨ge| + |eg⟩⟨eg| + s·e^{-(Γ₁+Γ₂)} (e^{iφ}|ge⟩⟨eg| + h.c.) ]
//
// with s = +1 after a D₊ click and s = −1 after a D₋ click.

#pragma once

#include <cmath>
#include <complex>

#include "hompost/bath.hpp"
#include "hompost/errors.hpp"

namespace hompost {

enum class Detector { Plus, Minus };

inline Detector flip(Detector d) { return d == Detector::Plus ? Detector::Minus : Detector::Plus; }
inline char to_char(Detector d) { return d == Detector::Plus ? '+' : '-'; }

struct SourceConfig {
    double g{0.01};           // γ/ω_c, shared by both emitters
    bath::BathSpec bath1{};
    bath::BathSpec bath2{};
    bool identical{true};
    bath::GammaModel model{bath::GammaModel::Exact};

    static SourceConfig identical_sources(double g, const bath::BathSpec& bath,
                                          bath::GammaModel model = bath::GammaModel::Exact) {
        SourceConfig s{g, bath, bath, true, model};
        s.validate();
        return s;
    }

    static SourceConfig distinct_sources(double g, const bath::BathSpec& bath1, const bath::BathSpec& bath2,
                                         bath::GammaModel model = bath::GammaModel::Exact) {
        SourceConfig s{g, bath1, bath2, bath1 == bath2, model};
        s.validate();
        return s;
    }

    void validate() const {
        if (!(std::isfinite(g) && g > 0.0)) throw DomainError("decay rate g must be finite and > 0");
        bath1.validate();
        bath2.validate();
        if (identical && !(bath1 == bath2)) throw DomainError("identical sources require equal baths");
    }
};

struct ConditionalState {
    double tau{0.0};
    double weight{1.0};         // e^{-gτ}, trace of ρ̃
    double coherence_mag{1.0};  // e^{-(Γ₁+Γ₂)}
    double phase{0.0};          // φ(t₁, t₁+τ)
    Detector first{Detector::Plus};

    // ⟨ge|ρ̃|eg⟩ including the detector-parity sign.
    std::complex<double> coherence() const {
        const double sign = first == Detector::Plus ? 1.0 : -1.0;
        return 0.5 * weight * sign * coherence_mag * std::polar(1.0, phase);
    }
};

namespace detail {

inline void require_nonnegative(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + " must be finite and >= 0");
}

} // namespace detail

// Γ₁(τ) + Γ₂(τ)
inline double total_decoherence(const SourceConfig& src, double tau) {
    const double g1 = bath::gamma(src.bath1, tau, src.model).value;
    if (src.identical) return 2.0 * g1;
    return g1 + bath::gamma(src.bath2, tau, src.model).value;
}

// φ(t₁, t₁+τ); zero for identical sources. Uses the closed-form Λ when the
// family has one.
inline double source_phase(const SourceConfig& src, double t1, double tau) {
    if (src.identical || src.bath1 == src.bath2) return 0.0;
    return bath::phi_phase(src.bath1, src.bath2, t1, t1 + tau, bath::PhaseMethod::ClosedForm);
}

// Probability of no click in [0, t].
inline double survival_probability(const SourceConfig& src, double t) {
    detail::require_nonnegative(t, "t");
    return std::exp(-2.0 * src.g * t);
}

struct FirstClick {
    double density{0.0};  // total first-click density at t
    double p_plus{0.5};   // fraction of it landing on D₊
};

inline FirstClick first_click_density(const SourceConfig& src, double t) {
    detail::require_nonnegative(t, "t");
    return {2.0 * src.g * std::exp(-2.0 * src.g * t), 0.5};
}

inline ConditionalState conditional_state(const SourceConfig& src, double t1, double tau,
                                          Detector first = Detector::Plus) {
    detail::require_nonnegative(t1, "t1");
    detail::require_nonnegative(tau, "tau");
    ConditionalState s;
    s.tau = tau;
    s.first = first;
    s.weight = std::exp(-src.g * tau);
    s.coherence_mag = std::exp(-total_decoherence(src, tau));
    s.phase = source_phase(src, t1, tau);
    return s;
}

// κ = e^{-(Γ₁+Γ₂)} cos φ: the detector-contrast factor of the second click.
inline double click_contrast(const SourceConfig& src, double t1, double tau) {
    const double mag = std::exp(-total_decoherence(src, tau));
    if (src.identical) return mag;
    return mag * std::cos(source_phase(src, t1, tau));
}

// p(t₂, d₂ | t₁, d₁) = (g/2) e^{-gτ} [1 ± κ], + when d₂ = d₁.
inline double second_click_density(const SourceConfig& src, double t1, double tau, bool same_detector) {
    detail::require_nonnegative(t1, "t1");
    detail::require_nonnegative(tau, "tau");
    const double kappa = click_contrast(src, t1, tau);
    const double base = 0.5 * src.g * std::exp(-src.g * tau);
    return same_detector ? base * (1.0 + kappa) : base * (1.0 - kappa);
}

// Same density expressed with explicit detector labels.
inline double second_click_density(const SourceConfig& src, double t1, double tau, Detector first, Detector second) {
    return second_click_density(src, t1, tau, first == second);
}

} // namespace hompost
