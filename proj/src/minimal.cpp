#include "fracmin/minimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracmin/summation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracmin {

Exponents::Exponents(double mu_, double p_, double q_) : mu(mu_), p(p_), q(q_) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("Exponents: need mu >= 0");
    if (!(p > 0.0) || !(p <= q) || !std::isfinite(q))
        throw std::invalid_argument("Exponents: need 0 < p <= q < inf");
}

namespace {

double check_mu(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("minimal function: need finite mu >= 0");
    return mu;
}

double check_point(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("minimal function: evaluation point must be finite");
    return x;
}

}  // namespace

ExtReal minimal_plus(const StepFunction& f, double mu, double x) {
    check_mu(mu);
    check_point(x);
    const auto& xs = f.breakpoints();
    const double inf = std::numeric_limits<double>::infinity();

    double best = inf;
    NeumaierSum prefix;        // integral over [x, prev], finite part
    bool prefix_inf = false;   // true once the integral is infinite

    double prev = x;
    auto first = std::upper_bound(xs.begin(), xs.end(), x);
    for (auto it = first; it != xs.end(); ++it) {
        ExtReal v = f.value_at(prev);  // value on [prev, *it)
        if (v.is_inf())
            prefix_inf = true;
        else
            prefix.add(v.value() * (*it - prev));
        prev = *it;

        if (prefix_inf) break;  // all later averages are infinite too
        double h = *it - x;
        double denom = mu == 0.0 ? h : std::pow(h, 1.0 + mu);
        best = std::min(best, prefix.result() / denom);
    }

    // h -> inf candidate: needs a finite right tail and a finite prefix.
    if (!prefix_inf && !f.right_tail().is_inf()) {
        double limit = mu > 0.0 ? 0.0 : f.right_tail().value();
        best = std::min(best, limit);
    }
    return best == inf ? ExtReal::inf() : ExtReal(best);
}

ExtReal minimal_minus(const StepFunction& f, double mu, double x) {
    return minimal_plus(reflect(f), mu, -x);
}

std::vector<ExtReal> minimal_plus_grid_serial(const StepFunction& f, double mu,
                                              std::span<const double> points) {
    std::vector<ExtReal> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = minimal_plus(f, mu, points[i]);
    return out;
}

std::vector<ExtReal> minimal_plus_grid(const StepFunction& f, double mu,
                                       std::span<const double> points) {
    std::vector<ExtReal> out(points.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = minimal_plus(f, mu, points[static_cast<size_t>(i)]);
    return out;
}

ExtReal minimal_plus_oracle(const StepFunction& f, double mu, double x,
                            double h_max, int n) {
    check_mu(mu);
    check_point(x);
    if (!(h_max > 0.0) || !std::isfinite(h_max))
        throw std::invalid_argument("minimal_plus_oracle: need finite h_max > 0");
    if (n < 2) throw std::invalid_argument("minimal_plus_oracle: need n >= 2");

    ExtReal best = ExtReal::inf();
    auto candidate = [&](double right, double h) {
        ExtReal avg = integrate(f, Interval(x, right)) /
                      ExtReal(mu == 0.0 ? h : std::pow(h, 1.0 + mu));
        best = min(best, avg);
    };

    // windows ending exactly at breakpoints; x + (bp - x) can round past bp
    for (double bp : f.breakpoints()) {
        const double h = bp - x;
        if (h > 0.0 && h <= h_max) candidate(bp, h);
    }
    const double lo = h_max / (static_cast<double>(n) * static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        const double h = lo * std::pow(h_max / lo, static_cast<double>(i) / (n - 1));
        candidate(x + h, h);
    }
    return best;
}

SublevelSet sublevel_set(const StepFunction& f, double mu, double lambda,
                         const Interval& window, int refinement) {
    check_mu(mu);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("sublevel_set: need finite lambda > 0");
    if (refinement < 1) throw std::invalid_argument("sublevel_set: need refinement >= 1");

    size_t cells = 1;
    for (double bp : f.breakpoints())
        if (bp > window.a && bp < window.b) ++cells;
    const size_t m = cells * static_cast<size_t>(refinement);
    const double width = window.length() / static_cast<double>(m);

    // m + 1 endpoints followed by m midpoints, one parallel sweep
    std::vector<double> pts(2 * m + 1);
    for (size_t i = 0; i <= m; ++i) pts[i] = window.a + width * static_cast<double>(i);
    pts[m] = window.b;
    for (size_t i = 0; i < m; ++i) pts[m + 1 + i] = pts[i] + 0.5 * width;
    std::vector<ExtReal> mv = minimal_plus_grid(f, mu, pts);

    const ExtReal thr(1.0 / lambda);
    const ExtReal thr_inner((1.0 / lambda) * (1.0 - 1e-12));
    SublevelSet out;
    out.subcells = static_cast<int>(m);
    std::vector<Interval> inner, outer;
    for (size_t i = 0; i < m; ++i) {
        ExtReal l = mv[i], r = mv[i + 1], c = mv[m + 1 + i];
        Interval cell(pts[i], pts[i + 1]);
        if (l < thr_inner && r < thr_inner && c < thr_inner) inner.push_back(cell);
        if (l < thr || r < thr || c < thr) outer.push_back(cell);
    }
    out.inner = merge_intervals(std::move(inner));
    out.outer = merge_intervals(std::move(outer));
    return out;
}

}  // namespace fracmin
