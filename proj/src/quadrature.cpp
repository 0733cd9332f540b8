#include "fracmin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracmin/summation.hpp"

namespace fracmin {

namespace {

struct Sample {
    double x;
    double w;
};

QuadratureResult run(const std::function<ExtReal(double)>& g, const Interval& I,
                     std::span<const double> refine_points, double tol,
                     long max_cells, bool parallel) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("integrate_midpoint: need finite tol > 0");
    if (max_cells < 2) throw std::invalid_argument("integrate_midpoint: max_cells too small");

    std::vector<double> seg{I.a};
    {
        std::vector<double> rp(refine_points.begin(), refine_points.end());
        std::sort(rp.begin(), rp.end());
        for (double x : rp)
            if (x > seg.back() && x < I.b) seg.push_back(x);
    }
    seg.push_back(I.b);
    const long nseg = static_cast<long>(seg.size()) - 1;

    double prev = 0.0;
    bool have_prev = false;
    long cells = 0;
    for (long m = 1; nseg * m <= max_cells; m *= 2) {
        cells = nseg * m;
        std::vector<Sample> samples;
        samples.reserve(static_cast<size_t>(cells));
        for (long s = 0; s < nseg; ++s) {
            const double u = seg[static_cast<size_t>(s)];
            const double v = seg[static_cast<size_t>(s) + 1];
            const double w = (v - u) / static_cast<double>(m);
            for (long k = 0; k < m; ++k)
                samples.push_back({u + (v - u) * (static_cast<double>(k) + 0.5) /
                                           static_cast<double>(m),
                                   w});
        }

        std::vector<ExtReal> vals(samples.size());
        if (parallel) {
            const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i)
                vals[static_cast<size_t>(i)] = g(samples[static_cast<size_t>(i)].x);
        } else {
            for (size_t i = 0; i < samples.size(); ++i) vals[i] = g(samples[i].x);
        }

        NeumaierSum sum;
        for (size_t i = 0; i < samples.size(); ++i) {
            if (vals[i].is_inf()) return {ExtReal::inf(), true, cells};
            sum.add(vals[i].value() * samples[i].w);
        }
        double cur = sum.result();

        if (have_prev && std::abs(cur - prev) <= tol * std::abs(cur) + 1e-300)
            return {ExtReal(cur), true, cells};
        prev = cur;
        have_prev = true;
    }
    return {ExtReal(prev), false, cells};
}

}  // namespace

QuadratureResult integrate_midpoint(const std::function<ExtReal(double)>& g,
                                    const Interval& I,
                                    std::span<const double> refine_points,
                                    double tol, long max_cells) {
    return run(g, I, refine_points, tol, max_cells, true);
}

QuadratureResult integrate_midpoint_serial(const std::function<ExtReal(double)>& g,
                                           const Interval& I,
                                           std::span<const double> refine_points,
                                           double tol, long max_cells) {
    return run(g, I, refine_points, tol, max_cells, false);
}

}  // namespace fracmin
