#include "fracmin/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracmin/minimal.hpp"
#include "fracmin/quadrature.hpp"

namespace fracmin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_ext(ExtReal v) {
    if (v.is_inf()) return kInf;
    if (v.is_zero()) return -kInf;
    return std::log(v.value());
}

bool in_safe_range(double x) { return x >= 1e-100 && x <= 1e100; }

// ratio = lhs / rhs from precomputed logs; an infinite rhs imposes no
// constraint, so it yields ratio 0, matching ExtReal division.
ExtReal ratio_from_logs(double log_ratio) {
    if (log_ratio == -kInf) return ExtReal(0.0);
    if (log_ratio == kInf) return ExtReal::inf();
    return ExtReal(std::exp(log_ratio));
}

double check_eta(double eta) {
    if (!(eta > 0.0) || !(eta < 1.0))
        throw std::invalid_argument("eta must lie in (0, 1)");
    return eta;
}

// Shared core of wpq_ratio and wpq_eta_ratio: numerator averages U over
// [alpha, alpha + eta|I|]; the eta variant scales the denominator by
// eta * (1-eta)^{(1+mu)q}.  Factors leaving [1e-100, 1e100] switch the
// quotient to log-space accumulation.
RatioReport wpq_core(const StepFunction& U, const StepFunction& om, const Exponents& e,
                     const Interval& I, double eta, bool eta_variant) {
    const double len = I.length();
    const Interval J(I.a, I.a + eta * len);
    const ExtReal lhs = integrate(U, J) / ExtReal(J.length());
    const ExtReal avg_om = integrate(om, I) / ExtReal(len);

    const double expo = -(1.0 + (e.mu - 1.0 / e.p) * e.q);
    const double pw = (e.p + 1.0) * e.q / e.p;
    const double f1 = std::pow(len, expo);
    const ExtReal f2 = pow(avg_om, pw);
    // the eta variant divides the plain RHS by eta * (1-eta)^{(1+mu)q}
    const double fac =
        eta_variant ? 1.0 / (eta * std::pow(1.0 - eta, (1.0 + e.mu) * e.q)) : 1.0;

    const double log_rhs = expo * std::log(len) + pw * log_ext(avg_om) + std::log(fac);
    const double log_ratio = log_rhs == kInf ? -kInf : log_ext(lhs) - log_rhs;

    RatioReport r;
    r.params = e;
    r.witness = I;
    r.kind = eta_variant ? ClassKind::WpqEta : ClassKind::Wpq;
    r.eta = eta;
    r.log_ratio = log_ratio;
    const bool safe = in_safe_range(f1) && !f2.is_inf() && in_safe_range(f2.value()) &&
                      in_safe_range(fac);
    r.ratio = safe ? lhs / (ExtReal(f1) * f2 * ExtReal(fac)) : ratio_from_logs(log_ratio);
    return r;
}

}  // namespace

WeightPair::WeightPair(StepFunction U_, StepFunction V_) : U(std::move(U_)), V(std::move(V_)) {
    if (!U.strictly_positive() || !V.strictly_positive())
        throw std::invalid_argument("WeightPair: weights must be strictly positive where finite");
}

StepFunction omega(const StepFunction& V, double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("omega: need finite p > 0");
    return power_transform(V, 1.0 / (p + 1.0));
}

PlusMinusDecomposition plus_minus(const Interval& I, int depth) {
    if (depth < 1) throw std::invalid_argument("plus_minus: need depth >= 1");
    PlusMinusDecomposition d;
    d.base = I;
    d.points.resize(static_cast<size_t>(depth) + 2);
    d.points[0] = I.a;
    for (size_t k = 1; k < d.points.size(); ++k)
        d.points[k] = 0.5 * (I.b + d.points[k - 1]);
    for (int k = 1; k <= depth; ++k) {
        const size_t i = static_cast<size_t>(k);
        d.minus.emplace_back(d.points[i - 1], d.points[i]);
        d.plus.emplace_back(d.points[i], d.points[i + 1]);
        d.full.emplace_back(d.points[i - 1], d.points[i + 1]);
    }
    return d;
}

std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::Wpq: return "wpq";
        case ClassKind::WpqEta: return "wpq_eta";
        case ClassKind::SawyerStar: return "sawyer_star";
        case ClassKind::WeakType: return "weak_type";
        case ClassKind::StrongType: return "strong_type";
    }
    return "unknown";
}

RatioReport wpq_ratio(const WeightPair& pair, const Exponents& e, const Interval& I) {
    return wpq_core(pair.U, omega(pair.V, e.p), e, I, 0.5, false);
}

RatioReport wpq_eta_ratio(const WeightPair& pair, const Exponents& e, const Interval& I,
                          double eta) {
    check_eta(eta);
    return wpq_core(pair.U, omega(pair.V, e.p), e, I, eta, true);
}

ExtReal wpq_rhs_scale(const StepFunction& om, const Exponents& e, const Interval& I) {
    const double len = I.length();
    const ExtReal avg_om = integrate(om, I) / ExtReal(len);
    const double expo = -(1.0 + (e.mu - 1.0 / e.p) * e.q);
    return ExtReal(std::pow(len, expo)) * pow(avg_om, (e.p + 1.0) * e.q / e.p);
}

namespace {

RatioReport sawyer_core(const StepFunction& U, const StepFunction& om, const Exponents& e,
                        const Interval& I, double tol, bool parallel) {
    const StepFunction g = restrict_to(om, I);
    auto integrand = [&](double x) {
        return U.value_at(x) * pow(minimal_plus(g, e.mu, x), -e.q);
    };

    std::vector<double> refine;
    for (double x : U.breakpoints())
        if (x > I.a && x < I.b) refine.push_back(x);
    for (double x : om.breakpoints())
        if (x > I.a && x < I.b) refine.push_back(x);

    const QuadratureResult quad = parallel
        ? integrate_midpoint(integrand, I, refine, tol)
        : integrate_midpoint_serial(integrand, I, refine, tol);
    const ExtReal denom = pow(integrate(om, I), e.q / e.p);

    RatioReport r;
    r.params = e;
    r.witness = I;
    r.kind = ClassKind::SawyerStar;
    r.ratio = quad.value / denom;
    r.log_ratio = denom.is_inf() ? -kInf : log_ext(quad.value) - log_ext(denom);
    r.converged = quad.converged;
    r.cells = quad.cells;
    return r;
}

}  // namespace

RatioReport sawyer_ratio(const WeightPair& pair, const Exponents& e, const Interval& I,
                         double tol) {
    return sawyer_core(pair.U, omega(pair.V, e.p), e, I, tol, true);
}

std::vector<Interval> interval_family(const Interval& window, const WeightPair& pair,
                                      int refinement) {
    if (refinement < 1) throw std::invalid_argument("interval_family: need refinement >= 1");
    std::vector<double> base{window.a};
    {
        std::vector<double> bp;
        for (double x : pair.U.breakpoints())
            if (x > window.a && x < window.b) bp.push_back(x);
        for (double x : pair.V.breakpoints())
            if (x > window.a && x < window.b) bp.push_back(x);
        std::sort(bp.begin(), bp.end());
        for (double x : bp)
            if (x > base.back()) base.push_back(x);
    }
    base.push_back(window.b);

    std::vector<double> grid;
    for (size_t i = 0; i + 1 < base.size(); ++i) {
        grid.push_back(base[i]);
        for (int j = 1; j < refinement; ++j) {
            double x = base[i] + (base[i + 1] - base[i]) * j / refinement;
            if (x > grid.back() && x < base[i + 1]) grid.push_back(x);
        }
    }
    grid.push_back(window.b);

    std::vector<Interval> family;
    family.reserve(grid.size() * (grid.size() - 1) / 2);
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = i + 1; j < grid.size(); ++j)
            family.emplace_back(grid[i], grid[j]);
    return family;
}

namespace {

RatioReport class_constant_impl(ClassKind kind, const WeightPair& pair, const Exponents& e,
                                std::span<const Interval> family, double eta, double tol,
                                bool parallel) {
    if (family.empty())
        throw std::invalid_argument("class_constant: family must be nonempty");
    if (kind != ClassKind::Wpq && kind != ClassKind::WpqEta && kind != ClassKind::SawyerStar)
        throw std::invalid_argument("class_constant: kind must be one of the class functionals");
    if (kind == ClassKind::WpqEta) check_eta(eta);
    if (!(tol > 0.0)) throw std::invalid_argument("class_constant: need tol > 0");

    const StepFunction om = omega(pair.V, e.p);
    auto one = [&](const Interval& I) {
        switch (kind) {
            case ClassKind::Wpq: return wpq_core(pair.U, om, e, I, 0.5, false);
            case ClassKind::WpqEta: return wpq_core(pair.U, om, e, I, eta, true);
            default: return sawyer_core(pair.U, om, e, I, tol, parallel);
        }
    };

    std::vector<RatioReport> reports(family.size());
    if (parallel) {
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(family.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            reports[static_cast<size_t>(i)] = one(family[static_cast<size_t>(i)]);
    } else {
        for (size_t i = 0; i < family.size(); ++i) reports[i] = one(family[i]);
    }

    // supremum; ties keep the first interval in family order
    size_t best = 0;
    bool all_converged = true;
    long cells = 0;
    for (size_t i = 0; i < reports.size(); ++i) {
        all_converged = all_converged && reports[i].converged;
        cells += reports[i].cells;
        if (reports[i].log_ratio > reports[best].log_ratio) best = i;
    }
    RatioReport r = reports[best];
    r.converged = all_converged;
    r.cells = cells;
    return r;
}

}  // namespace

RatioReport class_constant(ClassKind kind, const WeightPair& pair, const Exponents& e,
                           std::span<const Interval> family, double eta, double tol) {
    return class_constant_impl(kind, pair, e, family, eta, tol, true);
}

RatioReport class_constant_serial(ClassKind kind, const WeightPair& pair, const Exponents& e,
                                  std::span<const Interval> family, double eta, double tol) {
    return class_constant_impl(kind, pair, e, family, eta, tol, false);
}

}  // namespace fracmin
