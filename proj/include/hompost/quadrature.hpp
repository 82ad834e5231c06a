// quadrature.hpp: panel-wise adaptive Gauss–Kronrod integration

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hompost::quad {

struct Result {
    double value{0.0};
    double abs_error{0.0};
};

struct Options {
    double panel_width{1.0};   // upper bound on the width of each panel
    double abs_tol{1e-12};     // total absolute error budget over [a, b]
    unsigned max_depth{16};    // bisection depth per panel
};

namespace detail {

template <class F>
Result refine(F& f, double lo, double hi, double tol, unsigned depth) {
    Result r;
    double l1 = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &r.abs_error, &l1);
    // Boost floors its estimate near 256 ulp of the panel's L1 norm; below
    // that, bisection only doubles the floor.
    constexpr double kRoundoff = 512.0 * std::numeric_limits<double>::epsilon();
    if (r.abs_error <= std::max(tol, kRoundoff * l1) || depth == 0) return r;
    const double mid = 0.5 * (lo + hi);
    const Result left = refine(f, lo, mid, 0.5 * tol, depth - 1);
    const Result right = refine(f, mid, hi, 0.5 * tol, depth - 1);
    return {left.value + right.value, left.abs_error + right.abs_error};
}

} // namespace detail

// Integrates f over [a, b] by splitting into equal panels no wider than
// opts.panel_width; each panel gets an equal share of the absolute error
// budget and is bisected until its G15/K31 estimate meets it.
// Choosing panel_width ~ π/frequency keeps each panel to half an oscillation.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
    Result out;
    if (!(b > a)) return out;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / opts.panel_width)));
    const double h = (b - a) / static_cast<double>(panels);
    const double panel_tol = opts.abs_tol / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + h * static_cast<double>(i);
        const double hi = (i + 1 == panels) ? b : lo + h;
        const Result r = detail::refine(f, lo, hi, panel_tol, opts.max_depth);
        out.value += r.value;
        out.abs_error += r.abs_error;
    }
    return out;
}

} // namespace hompost::quad
