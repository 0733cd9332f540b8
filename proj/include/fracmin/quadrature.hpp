#pragma once

#include <functional>
#include <span>

#include "fracmin/ext_real.hpp"
#include "fracmin/interval.hpp"

namespace fracmin {

struct QuadratureResult {
    ExtReal value{0.0};
    bool converged = false;
    long cells = 0;  // cells used by the last pass
};

// Composite midpoint rule on the partition of I induced by refine_points,
// doubling the subdivision until two successive estimates agree to a
// relative tol, with a hard cap on the cell count.  An infinite sample
// makes the integral +inf (reported converged).  The two variants return
// identical bits; the first evaluates samples in parallel.
QuadratureResult integrate_midpoint(const std::function<ExtReal(double)>& g,
                                    const Interval& I,
                                    std::span<const double> refine_points,
                                    double tol, long max_cells = 1L << 20);
QuadratureResult integrate_midpoint_serial(const std::function<ExtReal(double)>& g,
                                           const Interval& I,
                                           std::span<const double> refine_points,
                                           double tol, long max_cells = 1L << 20);

}  // namespace fracmin
