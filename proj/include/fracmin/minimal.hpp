#pragma once

#include <span>
#include <vector>

#include "fracmin/interval.hpp"
#include "fracmin/step_function.hpp"

namespace fracmin {

// Parameter triple shared by the weight classes: order mu >= 0 and
// exponents 0 < p <= q < inf.
struct Exponents {
    double mu = 0.0;
    double p = 1.0;
    double q = 1.0;

    Exponents() = default;
    Exponents(double mu_, double p_, double q_);
};

// One-sided fractional minimal function of order mu >= 0,
//
//   m_mu^+(f)(x) = inf_{h > 0} h^{-(1+mu)} * integral_x^{x+h} f,
//
// evaluated exactly.  On each affine piece of the prefix integral
// F(h) = a + b*h the objective (a + b*h) * h^{-(1+mu)} has derivative of
// one sign, so the infimum over bounded h is attained at a breakpoint
// offset; the h -> inf limit contributes 0 (mu > 0) or the right tail
// value (mu = 0) whenever the prefix integral stays finite.
ExtReal minimal_plus(const StepFunction& f, double mu, double x);

// m_mu^-(f)(x), the mirror image: averages over [x-h, x].
ExtReal minimal_minus(const StepFunction& f, double mu, double x);

// m_mu^+ at many points.  The two variants return identical bits; the
// first evaluates points in parallel.
std::vector<ExtReal> minimal_plus_grid(const StepFunction& f, double mu,
                                       std::span<const double> points);
std::vector<ExtReal> minimal_plus_grid_serial(const StepFunction& f, double mu,
                                              std::span<const double> points);

// Brute-force upper bound on the infimum: minimum average over all
// breakpoint offsets in (0, h_max] plus n log-spaced h between
// h_max/n^2 and h_max.  Converges to the restricted infimum as n grows;
// agrees with minimal_plus exactly when f is +inf outside a bounded set
// (every candidate is then a breakpoint offset).
ExtReal minimal_plus_oracle(const StepFunction& f, double mu, double x,
                            double h_max, int n);

// Sandwich of the sublevel set { x in window : m_mu^+(f)(x) < 1/lambda }.
//
// The window is cut into refinement * (cells of f meeting the window)
// equal subcells.  A subcell joins `inner` when m < (1/lambda)*(1 - 1e-12)
// at both endpoints and the midpoint, and joins `outer` when m < 1/lambda
// at any of the three.  Adjacent subcells are merged.
struct SublevelSet {
    std::vector<Interval> inner;
    std::vector<Interval> outer;
    int subcells = 0;
};

SublevelSet sublevel_set(const StepFunction& f, double mu, double lambda,
                         const Interval& window, int refinement);

}  // namespace fracmin
