#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracmin/interval.hpp"
#include "fracmin/minimal.hpp"
#include "fracmin/step_function.hpp"

namespace fracmin {

// Weight pair (U, V): step functions that are strictly positive where
// finite, U controlling the level-set side and V the test-function side.
struct WeightPair {
    StepFunction U;
    StepFunction V;

    WeightPair(StepFunction U_, StepFunction V_);
};

// omega = V^{1/(p+1)}, the weight the structural averages run over.
StepFunction omega(const StepFunction& V, double p);

// Dyadic-from-the-right decomposition of I = [alpha, beta]:
// x_0 = alpha, x_k = (beta + x_{k-1}) / 2, so |minus_k| = |I| * 2^{-k} and
// doubling minus_k from its left endpoint lands exactly on beta.
// For k = 1..depth:  minus_k = [x_{k-1}, x_k], plus_k = [x_k, x_{k+1}],
// full_k = [x_{k-1}, x_{k+1}].
struct PlusMinusDecomposition {
    Interval base{0.0, 1.0};
    std::vector<double> points;     // x_0 .. x_{depth+1}
    std::vector<Interval> minus;
    std::vector<Interval> plus;
    std::vector<Interval> full;
};

PlusMinusDecomposition plus_minus(const Interval& I, int depth);

// The first three are interval-family class functionals; WeakType and
// StrongType label the per-instance inequality ratios of the verification
// harness, which reuse RatioReport.
enum class ClassKind { Wpq, WpqEta, SawyerStar, WeakType, StrongType };

std::string to_string(ClassKind k);

// One tested interval of a class functional.  ratio is the measured
// quotient LHS / RHS; log_ratio carries the same information in log space
// and stays meaningful when ratio over- or underflows.
struct RatioReport {
    ExtReal ratio{0.0};
    double log_ratio = 0.0;
    Interval witness{0.0, 1.0};
    Exponents params{};
    ClassKind kind = ClassKind::Wpq;
    double eta = 0.5;           // only meaningful for WpqEta
    bool converged = true;      // quadrature status (SawyerStar only)
    long cells = 0;
};

// W_{p,q}^+ quotient on I = [alpha, beta] with left half I^-:
//
//   (1/|I^-|) int_{I^-} U
//   ---------------------------------------------------------------
//   |I|^{-(1+(mu-1/p)q)} * ((1/|I|) int_I omega)^{(p+1)q/p}
RatioReport wpq_ratio(const WeightPair& pair, const Exponents& e, const Interval& I);

// Off-center variant: the numerator averages U over [alpha, alpha+eta|I|],
// and the denominator gains the factor eta * (1-eta)^{(1+mu)q}.  At
// eta = 1/2 this is wpq_ratio scaled by 2^{-(1+(1+mu)q)}.
RatioReport wpq_eta_ratio(const WeightPair& pair, const Exponents& e, const Interval& I,
                          double eta);

// Sawyer-type quotient int_I U * m_mu^+(omega restricted to I)^{-q} over
// (int_I omega)^{q/p}; the numerator needs quadrature (tolerance tol).
RatioReport sawyer_ratio(const WeightPair& pair, const Exponents& e, const Interval& I,
                         double tol);

// Denominator of the W_{p,q}^+ quotient without any constant, reused by
// the verification harness.
ExtReal wpq_rhs_scale(const StepFunction& om, const Exponents& e, const Interval& I);

// All subintervals [g_i, g_j], i < j, of the grid made of the window
// endpoints, the breakpoints of U and V inside the window, and
// refinement - 1 extra equispaced points per gap.  Ordered by (i, j).
std::vector<Interval> interval_family(const Interval& window, const WeightPair& pair,
                                      int refinement);

// Supremum of the chosen quotient over the family; witness is the first
// interval attaining it.  The two variants return identical bits; the
// first sweeps the family in parallel.
RatioReport class_constant(ClassKind kind, const WeightPair& pair, const Exponents& e,
                           std::span<const Interval> family, double eta = 0.5,
                           double tol = 1e-6);
RatioReport class_constant_serial(ClassKind kind, const WeightPair& pair, const Exponents& e,
                                  std::span<const Interval> family, double eta = 0.5,
                                  double tol = 1e-6);

}  // namespace fracmin
