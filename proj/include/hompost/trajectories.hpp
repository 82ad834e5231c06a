// trajectories.hpp: Monte Carlo click records, post-selection and visibility estimates
//
// Records are drawn exactly from the solved densities: t₁ ~ Exp(2g), d₁ fair,
// τ ~ Exp(g), and d₂ = d₁ with probability (1+κ)/2.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "hompost/bath.hpp"
#include "hompost/dynamics.hpp"
#include "hompost/errors.hpp"

namespace hompost {

struct ClickRecord {
    double t1{0.0};
    Detector d1{Detector::Plus};
    double tau{0.0};
    Detector d2{Detector::Plus};

    bool operator==(const ClickRecord&) const = default;
};

struct Window {
    double delta{std::numeric_limits<double>::infinity()};
    std::optional<double> t1_max{};

    void validate() const {
        if (!(delta > 0.0)) throw DomainError("window delta must be > 0");
        if (t1_max && !(*t1_max > 0.0)) throw DomainError("window t1_max must be > 0");
    }
    bool accepts(const ClickRecord& r) const { return r.tau <= delta && (!t1_max || r.t1 <= *t1_max); }
};

struct VisibilityEstimate {
    std::size_t n_same{0};
    std::size_t n_diff{0};
    double nu_hat{0.0};
    double ci_low{0.0};
    double ci_high{1.0};
    double efficiency{0.0};
};

namespace rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() { return mix64(state_ += kGolden); }

    // uniform on (0, 1], 53-bit resolution
    double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    std::uint64_t state_;
};

// Independent stream for record `index` of the ensemble seeded by `seed`.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index * kGolden + 0x632be59bd9b4e019ULL)));
}

} // namespace rng

// Cubic B-spline of τ ↦ Γ₁(τ)+Γ₂(τ) on [0, tau_cap]; direct evaluation beyond.
class DecoherenceTable {
public:
    DecoherenceTable(const SourceConfig& src, double tau_cap = 50.0, double step = 0.02) : src_(src), cap_(tau_cap) {
        if (!(tau_cap > 0.0) || !(step > 0.0) || step >= tau_cap) throw DomainError("bad table range");
        const auto m = static_cast<std::size_t>(std::ceil(tau_cap / step));
        const double h = tau_cap / static_cast<double>(m);
        // nodes run past the cap so the free right end stays outside [0, cap]
        const std::size_t n = m + 1 + 16;
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = total_decoherence(src, h * static_cast<double>(i));
        // Γ'(0) = 0 for every family with a spectral density
        const double left = src.bath1.has_spectral_density() && src.bath2.has_spectral_density()
                                ? 0.0
                                : std::numeric_limits<double>::quiet_NaN();
        spline_.emplace(y.begin(), y.end(), 0.0, h, left);
    }

    double operator()(double tau) const { return tau <= cap_ ? (*spline_)(tau) : total_decoherence(src_, tau); }
    double tau_cap() const { return cap_; }

private:
    SourceConfig src_;
    double cap_;
    std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

// κ(t₁, τ) for the sampler, optionally through a decoherence table.
class ContrastModel {
public:
    explicit ContrastModel(const SourceConfig& src, bool tabulate = false) : src_(src) {
        src_.validate();
        // Markovian Γ is already a one-liner
        const bool cheap = src.bath1.family == bath::Family::Markovian && src.bath2.family == bath::Family::Markovian;
        if (tabulate && !cheap) table_.emplace(src_);
    }

    const SourceConfig& source() const { return src_; }

    double operator()(double t1, double tau) const {
        const double total = table_ ? (*table_)(tau) : total_decoherence(src_, tau);
        const double mag = std::exp(-total);
        if (src_.identical) return mag;
        return mag * std::cos(source_phase(src_, t1, tau));
    }

private:
    SourceConfig src_;
    std::optional<DecoherenceTable> table_;
};

inline ClickRecord sample_record(rng::SplitMix64& stream, const ContrastModel& model) {
    const double g = model.source().g;
    ClickRecord r;
    r.t1 = stream.exponential(2.0 * g);
    r.d1 = (stream.next() >> 63) ? Detector::Minus : Detector::Plus;
    r.tau = stream.exponential(g);
    const double kappa = model(r.t1, r.tau);
    const bool same = stream.uniform() <= 0.5 * (1.0 + kappa);
    r.d2 = same ? r.d1 : flip(r.d1);
    return r;
}

inline ClickRecord sample_record(rng::SplitMix64& stream, const SourceConfig& src) {
    return sample_record(stream, ContrastModel(src));
}

// Record i comes from substream (seed, i), so the split across workers does not matter.
inline std::vector<ClickRecord> simulate_ensemble(std::uint64_t seed, std::size_t n, const ContrastModel& model,
                                                  unsigned workers = 0) {
    if (n == 0) throw DomainError("ensemble size must be >= 1");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    std::vector<ClickRecord> out(n);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](unsigned w) {
        try {
            const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i) {
                auto stream = rng::substream(seed, i);
                out[i] = sample_record(stream, model);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::vector<ClickRecord> simulate_ensemble(std::uint64_t seed, std::size_t n, const SourceConfig& src,
                                                  unsigned workers = 0) {
    return simulate_ensemble(seed, n, ContrastModel(src), workers);
}

inline constexpr double kWilsonZ = 1.959964;

// Wilson score interval for p_same, folded through ν = |2p − 1|.
inline VisibilityEstimate visibility_from_counts(std::size_t n_same, std::size_t n_diff, std::size_t total) {
    const std::size_t n = n_same + n_diff;
    if (n == 0) throw EmptyEnsembleError("no records inside the post-selection window");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(n_same) / nn;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = std::max(0.0, centre - half), hi = std::min(1.0, centre + half);

    VisibilityEstimate e;
    e.n_same = n_same;
    e.n_diff = n_diff;
    e.nu_hat = std::abs(static_cast<double>(n_same) - static_cast<double>(n_diff)) / nn;
    if (lo >= 0.5) {
        e.ci_low = 2.0 * lo - 1.0;
        e.ci_high = 2.0 * hi - 1.0;
    } else if (hi <= 0.5) {
        e.ci_low = 1.0 - 2.0 * hi;
        e.ci_high = 1.0 - 2.0 * lo;
    } else {
        e.ci_low = 0.0;
        e.ci_high = std::max(2.0 * hi - 1.0, 1.0 - 2.0 * lo);
    }
    e.ci_low = std::min(e.ci_low, e.nu_hat);
    e.ci_high = std::max(e.ci_high, e.nu_hat);
    e.efficiency = total == 0 ? 0.0 : nn / static_cast<double>(total);
    return e;
}

inline VisibilityEstimate estimate_visibility(const std::vector<ClickRecord>& records, const Window& window) {
    window.validate();
    std::size_t same = 0, diff = 0;
    for (const auto& r : records) {
        if (!window.accepts(r)) continue;
        (r.d1 == r.d2 ? same : diff) += 1;
    }
    return visibility_from_counts(same, diff, records.size());
}

struct VisibilityBin {
    double tau_lo{0.0};
    double tau_hi{0.0};
    double tau_mid{0.0};
    std::size_t n{0};
    std::optional<VisibilityEstimate> estimate{};  // empty bin → absent
};

// Per-bin estimates over records grouped by τ into [e_k, e_{k+1}).
inline std::vector<VisibilityBin> binned_visibility(const std::vector<ClickRecord>& records,
                                                    const std::vector<double>& edges) {
    if (edges.size() < 2) throw DomainError("need at least two bin edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw DomainError("bin edges must be strictly increasing");

    const std::size_t nb = edges.size() - 1;
    std::vector<std::size_t> same(nb, 0), diff(nb, 0);
    for (const auto& r : records) {
        if (r.tau < edges.front() || r.tau >= edges.back()) continue;
        const auto k = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), r.tau) - edges.begin()) - 1;
        (r.d1 == r.d2 ? same[k] : diff[k]) += 1;
    }
    std::vector<VisibilityBin> bins(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        auto& b = bins[k];
        b.tau_lo = edges[k];
        b.tau_hi = edges[k + 1];
        b.tau_mid = 0.5 * (edges[k] + edges[k + 1]);
        b.n = same[k] + diff[k];
        if (b.n > 0) b.estimate = visibility_from_counts(same[k], diff[k], records.size());
    }
    return bins;
}

} // namespace hompost
