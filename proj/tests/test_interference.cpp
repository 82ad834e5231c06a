#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hompost/interference.hpp"

using namespace hompost;
using bath::BathSpec;
using bath::GammaModel;
constexpr double pi = std::numbers::pi;

namespace {

const BathSpec kOhmic = BathSpec::ohmic(0.5, 10.0);
const BathSpec kSuper = BathSpec::superohmic(0.5, 10.0);
const BathSpec kMarkov = BathSpec::markovian(0.5, 10.0);

SourceConfig src(const BathSpec& b, double g = 0.01) { return SourceConfig::identical_sources(g, b); }

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

// independent window average of (1+v²)^{-2A}
double lowT_oracle(double A, double delta) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([A](double v) { return std::pow(1.0 + v * v, -2.0 * A); }, 0.0, delta) / delta;
}

} // namespace

TEST(Visibility, UnityAtZeroSeparation) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) EXPECT_EQ(visibility(src(b), 0.0), 1.0);
}

TEST(Visibility, MarkovianValue) {
    EXPECT_NEAR(visibility(src(kMarkov), 1.0), std::exp(-pi / 10.0), 1e-15);
    EXPECT_NEAR(visibility(src(kMarkov), 1.0), 0.73040, 1e-5);
}

TEST(Visibility, SuperohmicLongTime) {
    const double v = visibility(src(kSuper), 200.0);
    EXPECT_NEAR(v, superohmic_asymptote(kSuper), 1e-5);
    // the printed remnant exp(-2A(1+π²/(3θ²))) ≈ 0.3559 belongs to the scaling-limit model
    EXPECT_NEAR(superohmic_asymptote(kSuper, GammaModel::ScalingLimit), 0.3559, 1e-4);
    EXPECT_NEAR(visibility(SourceConfig::identical_sources(0.01, kSuper, GammaModel::ScalingLimit), 200.0),
                superohmic_asymptote(kSuper, GammaModel::ScalingLimit), 1e-4);
}

TEST(Visibility, IndependentOfDecayRate) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) {
        for (double tau : lin_grid(0.0, 20.0, 41)) {
            const double ref = visibility(src(b, 1e-2), tau);
            EXPECT_EQ(visibility(src(b, 1e-3), tau), ref);
            EXPECT_EQ(visibility(src(b, 1e-1), tau), ref);
        }
    }
}

TEST(Visibility, BoundedInUnitInterval) {
    for (const auto& b : {kOhmic, kSuper, kMarkov, BathSpec::ohmic(3.0, 0.5)}) {
        for (double tau : lin_grid(0.0, 50.0, 101)) {
            const double v = visibility(src(b), tau);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Visibility, RejectsNonIdenticalSources) {
    EXPECT_THROW(visibility(SourceConfig::distinct_sources(0.01, kOhmic, kSuper), 1.0), DomainError);
}

TEST(VisibilityNonIdentical, ReducesBitForBit) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) {
        const auto s = src(b);
        for (double tau : {0.0, 0.3, 2.0, 17.0}) {
            EXPECT_EQ(visibility_nonidentical(s, 4.0, tau), visibility(s, tau));
            // explicitly flagged as distinct but with equal baths
            const SourceConfig flagged{0.01, b, b, false};
            EXPECT_EQ(visibility_nonidentical(flagged, 4.0, tau), visibility(s, tau));
        }
    }
}

TEST(VisibilityNonIdentical, OhmicPairValue) {
    const auto s = SourceConfig::distinct_sources(0.01, BathSpec::ohmic(0.25, 10.0), kOhmic);
    EXPECT_NEAR(visibility_nonidentical(s, 0.0, 1.0), 0.76178436324612475, 1e-12);
}

TEST(VisibilityNonIdentical, VanishesAtQuarterPhase) {
    // With t1 = 0, φ = (A₂ − A₁)(τ − atan τ); choose A₂ so that φ(0, 1) = π/2.
    const double A1 = 0.25;
    const double A2 = A1 + (pi / 2.0) / (1.0 - std::atan(1.0));
    const auto s = SourceConfig::distinct_sources(0.01, BathSpec::ohmic(A1, 10.0), BathSpec::ohmic(A2, 10.0));
    EXPECT_NEAR(source_phase(s, 0.0, 1.0), pi / 2.0, 1e-12);
    EXPECT_NEAR(visibility_nonidentical(s, 0.0, 1.0), 0.0, 1e-12);
}

// Frozen from mpmath: ∫₀^Δ g e^{-gτ} e^{-2Γ(τ)} dτ / (1 − e^{-gΔ}), g = 0.01.
TEST(WindowedVisibility, FrozenValues) {
    struct Case { BathSpec bath; double delta; double expected; };
    const std::vector<Case> cases{
        {kMarkov, 0.5, 0.92547651550282503}, {kOhmic, 0.5, 0.96135681679337516}, {kSuper, 0.5, 0.82954171441922906},
        {kMarkov, 1.0, 0.85837919437210625}, {kOhmic, 1.0, 0.8778499437257748},  {kSuper, 1.0, 0.64213241119605148},
        {kMarkov, 5.0, 0.50745575966172101}, {kOhmic, 5.0, 0.43657895301738706}, {kSuper, 5.0, 0.40114251457803366},
    };
    for (const auto& c : cases) {
        EXPECT_NEAR(windowed_visibility(src(c.bath), c.delta), c.expected, 1e-10) << bath::to_string(c.bath.family);
    }
}

TEST(WindowedVisibility, BothFormsAgree) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) {
        for (double d : {1e-3, 0.2, 1.0, 7.0, 40.0}) {
            EXPECT_NEAR(windowed_visibility(src(b), d), windowed_visibility_ratio(src(b), d), 1e-8);
        }
    }
}

TEST(WindowedVisibility, ApproachesUnityForNarrowWindows) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) EXPECT_GE(windowed_visibility(src(b), 1e-3), 0.999);
}

TEST(WindowedVisibility, PerfectWithoutDephasing) {
    const auto s = src(BathSpec::ohmic(0.0, 10.0));
    for (double d : {1e-3, 1.0, 100.0}) EXPECT_NEAR(windowed_visibility(s, d), 1.0, 1e-13);
}

TEST(WindowedVisibility, InfiniteWindowIsZeroResolutionLimit) {
    // Markovian: g/(g + 2Γ_M'), Γ_M' = Aπ/θ
    EXPECT_NEAR(windowed_visibility(src(kMarkov), std::numeric_limits<double>::infinity()), 0.01 / (0.01 + pi / 10.0),
                1e-10);
}

TEST(WindowedVisibility, DomainErrors) {
    EXPECT_THROW(windowed_visibility(src(kOhmic), 0.0), DomainError);
    EXPECT_THROW(windowed_visibility(src(kOhmic), -1.0), DomainError);
}

TEST(WindowedVisibility, MonotoneForMarkovianAndOhmic) {
    for (const auto& b : {kOhmic, kMarkov}) {
        double prev = 1.0;
        for (double d : lin_grid(0.1, 10.0, 100)) {
            const double v = windowed_visibility(src(b), d);
            EXPECT_LE(v, prev + 1e-12) << d;
            prev = v;
        }
    }
}

TEST(WindowedVisibility, BoundedBelowByWorstCaseInWindow) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) {
        for (double d : {0.5, 2.0, 10.0}) {
            double gmax = 0.0;
            for (double t : lin_grid(0.0, d, 2001)) gmax = std::max(gmax, bath::gamma(b, t).value);
            EXPECT_GE(windowed_visibility(src(b), d), std::exp(-2.0 * gmax) - 1e-12);
        }
    }
}

TEST(WindowedVisibility, InsensitiveToDecayRateWhenWindowShort) {
    for (const auto& b : {kOhmic, kSuper, kMarkov}) {
        for (double d : {0.1, 0.5, 1.0}) {
            EXPECT_NEAR(windowed_visibility(src(b, 1e-4), d), windowed_visibility(src(b, 1e-6), d), 1e-3);
        }
    }
}

TEST(WindowedMarkovian, ClosedForm) {
    EXPECT_NEAR(windowed_visibility_markovian(kMarkov, 1.0), (10.0 / pi) * (1.0 - std::exp(-pi / 10.0)), 1e-15);
    EXPECT_NEAR(windowed_visibility_markovian(kMarkov, 1.0), 0.858155, 1e-6);
    EXPECT_NEAR(windowed_visibility_markovian(kMarkov, 1e-9), 1.0, 1e-9);
    EXPECT_NEAR(windowed_visibility_markovian(BathSpec::markovian(1.0, 10.0), 1e-9), 1.0, 1e-9);
    EXPECT_THROW(windowed_visibility_markovian(kOhmic, 1.0), UnsupportedError);
}

TEST(WindowedMarkovian, SeriesBranchIsContinuous) {
    const double d_switch = 1e-6 * 10.0 / pi;  // x = 2AπΔ/θ = 1e-6
    EXPECT_NEAR(windowed_visibility_markovian(kMarkov, d_switch * (1 - 1e-12)),
                windowed_visibility_markovian(kMarkov, d_switch * (1 + 1e-12)), 1e-15);
}

TEST(WindowedMarkovian, MatchesWindowAverageOfRateLaw) {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double d : {0.3, 1.0, 4.0}) {
        const double avg = ts.integrate([](double t) { return std::exp(-pi * t / 10.0); }, 0.0, d) / d;
        EXPECT_NEAR(windowed_visibility_markovian(kMarkov, d), avg, 1e-13);
    }
}

TEST(WindowedMarkovian, AgreesWithNumericWindowForSmallDecayRate) {
    for (double d : {0.1, 0.5, 1.0}) {
        EXPECT_NEAR(windowed_visibility(src(kMarkov, 1e-4), d), windowed_visibility_markovian(kMarkov, d), 1e-4);
    }
    // at g = 1e-2 the g·Δ correction is ~2.2e-4 at Δ = 1 and ~6e-5 at Δ = 0.5
    EXPECT_NEAR(windowed_visibility(src(kMarkov, 1e-2), 0.5), windowed_visibility_markovian(kMarkov, 0.5), 1e-4);
}

TEST(WindowedOhmicLowT, HalfCouplingIsArctan) {
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(kOhmic, 1.0), pi / 4.0, 1e-15);
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(kOhmic, 1.0), 0.78540, 1e-5);
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(kOhmic, 3.0), lowT_oracle(0.5, 3.0), 1e-12);
}

TEST(WindowedOhmicLowT, GeneralCoupling) {
    const auto b = BathSpec::ohmic(0.25, 10.0);
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(b, 2.0), lowT_oracle(0.25, 2.0), 1e-8);
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(b, 2.0), 0.72181773758940517, 1e-12);
    for (double A : {0.1, 0.3, 0.75, 1.2}) {
        for (double d : {0.05, 0.7, 5.0}) {
            EXPECT_NEAR(windowed_visibility_ohmic_lowT(BathSpec::ohmic(A, 10.0), d), lowT_oracle(A, d), 1e-8);
        }
    }
}

TEST(WindowedOhmicLowT, NarrowWindowLimit) {
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(kOhmic, 1e-8), 1.0, 1e-15);
    EXPECT_NEAR(windowed_visibility_ohmic_lowT(BathSpec::ohmic(1.0, 10.0), 1e-8), 1.0, 1e-15);
}

TEST(WindowedOhmicLowT, IncompleteBetaIdentity) {
    const auto b = BathSpec::ohmic(0.3, 10.0);
    EXPECT_NEAR(ohmic_lowT_beta_form(b, 0.1), windowed_visibility_ohmic_lowT(b, 0.1), 1e-8);
    EXPECT_NEAR(ohmic_lowT_beta_form(b, 0.1), 0.99800954098432176, 1e-14);
    for (double A : {0.25, 0.5, 0.9}) {
        for (double d : {0.2, 0.6, 0.9}) {
            const auto bb = BathSpec::ohmic(A, 10.0);
            EXPECT_NEAR(ohmic_lowT_beta_form(bb, d), windowed_visibility_ohmic_lowT(bb, d), 1e-10);
        }
    }
}

TEST(WindowedOhmicLowT, ApproximatesLowTemperatureWindowedVisibility) {
    // θ → ∞, g → 0. The zero-temperature ohmic Γ is (A/2)ln(1+τ²), so the
    // (1+v²)^{-2A} form at coupling A/2 is the cold limit of a bath with coupling A.
    const auto cold = SourceConfig::identical_sources(1e-7, BathSpec::ohmic(0.5, 1e6));
    for (double d : {0.5, 2.0}) {
        EXPECT_NEAR(windowed_visibility(cold, d), windowed_visibility_ohmic_lowT(BathSpec::ohmic(0.25, 1e6), d), 1e-5);
    }
}

TEST(SuperohmicAsymptote, Values) {
    EXPECT_NEAR(superohmic_asymptote(kSuper, GammaModel::ScalingLimit), std::exp(-(1.0 + pi * pi / 300.0)), 1e-15);
    EXPECT_EQ(superohmic_asymptote(BathSpec::superohmic(0.0, 10.0)), 1.0);
    EXPECT_NEAR(superohmic_asymptote(kSuper), visibility(src(kSuper), 200.0), 1e-3);
    EXPECT_THROW(superohmic_asymptote(kOhmic), UnsupportedError);
}

TEST(WindowedNonIdentical, ReducesToIdenticalWindow) {
    const SourceConfig flagged{0.05, kOhmic, kOhmic, false};
    EXPECT_NEAR(windowed_visibility_nonidentical(flagged, 2.0), windowed_visibility(src(kOhmic, 0.05), 2.0), 1e-9);
}

TEST(WindowedNonIdentical, ShortFirstClickWindowHelps) {
    const auto s = SourceConfig::distinct_sources(0.05, BathSpec::ohmic(0.25, 10.0), BathSpec::ohmic(0.5, 10.0));
    const double wide = windowed_visibility_nonidentical(s, 1.0);
    const double narrow = windowed_visibility_nonidentical(s, 1.0, 2.0);
    EXPECT_GT(narrow, wide);
    EXPECT_LE(narrow, 1.0);
}

TEST(SampleCurve, ElementWise) {
    const auto c = sample_curve(CurveKind::TimeResolved, src(kOhmic), {0.0});
    ASSERT_EQ(c.values.size(), 1u);
    EXPECT_EQ(c.values[0], 1.0);
    const auto grid = lin_grid(0.5, 5.0, 10);
    const auto w = sample_curve(CurveKind::Windowed, src(kSuper), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(w.values[i], windowed_visibility(src(kSuper), grid[i]));
    EXPECT_THROW(sample_curve(CurveKind::TimeResolved, src(kOhmic), {1.0, 1.0}), DomainError);
    EXPECT_THROW(sample_curve(CurveKind::TimeResolved, src(kOhmic), {-1.0}), DomainError);
}
