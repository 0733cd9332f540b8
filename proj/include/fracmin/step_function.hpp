#pragma once

#include <span>
#include <vector>

#include "fracmin/ext_real.hpp"
#include "fracmin/interval.hpp"

namespace fracmin {

// Piecewise constant function on the whole line with values in [0, inf].
//
// Breakpoints x_0 < ... < x_N partition the line into N-1 bounded cells
// [x_i, x_{i+1}) plus two tails: value left_tail on (-inf, x_0) and
// right_tail on [x_N, inf).  Cells are left closed, so value_at(x_i) is the
// value of the cell starting at x_i.
class StepFunction {
public:
    StepFunction(std::vector<double> breakpoints, std::vector<ExtReal> values,
                 ExtReal left_tail, ExtReal right_tail);

    static StepFunction constant(ExtReal c);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<ExtReal>& values() const { return values_; }
    ExtReal left_tail() const { return left_; }
    ExtReal right_tail() const { return right_; }

    ExtReal value_at(double x) const;

    // True when every value and both tails are either +inf or strictly
    // positive; required of weights.
    bool strictly_positive() const;

    friend bool operator==(const StepFunction& f, const StepFunction& g) = default;

private:
    std::vector<double> breaks_;
    std::vector<ExtReal> values_;
    ExtReal left_, right_;
};

// Lebesgue integral of f over I.  Nonnegative terms accumulated with
// compensated summation; any positive-length overlap with an infinite
// value gives +inf.
ExtReal integrate(const StepFunction& f, const Interval& I);

// f inside I, +inf outside.
StepFunction restrict_to(const StepFunction& f, const Interval& I);

// Pointwise f^e for e != 0, with 0^e and inf^e as in pow(ExtReal, e).
// For e < 0, f must have no zero values.
StepFunction power_transform(const StepFunction& f, double e);

// x -> f(-x).  Cells being left closed, the reflected function takes the
// right-limit value at its breakpoints; this never matters under integrals
// or one-sided averages taken from the right.
StepFunction reflect(const StepFunction& f);

// x -> f(s*x + t) for s > 0.
StepFunction affine(const StepFunction& f, double s, double t);

// c * f for finite c > 0.
StepFunction scale(const StepFunction& f, double c);

// Pointwise g * h^e on the merged breakpoint grid (e != 0).  Covers the
// quotients used by the weight functionals, e.g. V * f^{-p}.
StepFunction mul_pow(const StepFunction& g, const StepFunction& h, double e);

}  // namespace fracmin
