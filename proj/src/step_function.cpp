#include "fracmin/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracmin/summation.hpp"

namespace fracmin {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<ExtReal> values,
                           ExtReal left_tail, ExtReal right_tail)
    : breaks_(std::move(breakpoints)),
      values_(std::move(values)),
      left_(left_tail),
      right_(right_tail) {
    if (breaks_.empty())
        throw std::invalid_argument("StepFunction: need at least one breakpoint");
    if (values_.size() + 1 != breaks_.size())
        throw std::invalid_argument("StepFunction: values must have one entry per bounded cell");
    for (size_t i = 0; i < breaks_.size(); ++i) {
        if (!std::isfinite(breaks_[i]))
            throw std::invalid_argument("StepFunction: breakpoints must be finite");
        if (i > 0 && !(breaks_[i - 1] < breaks_[i]))
            throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
    }
}

StepFunction StepFunction::constant(ExtReal c) {
    return StepFunction({0.0}, {}, c, c);
}

ExtReal StepFunction::value_at(double x) const {
    if (x < breaks_.front()) return left_;
    if (x >= breaks_.back()) return right_;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<size_t>(it - breaks_.begin()) - 1];
}

bool StepFunction::strictly_positive() const {
    auto ok = [](ExtReal v) { return v.is_inf() || v.value() > 0.0; };
    if (!ok(left_) || !ok(right_)) return false;
    return std::all_of(values_.begin(), values_.end(), ok);
}

ExtReal integrate(const StepFunction& f, const Interval& I) {
    const auto& xs = f.breakpoints();
    NeumaierSum sum;
    bool infinite = false;
    auto add = [&](ExtReal v, double len) {
        if (!(len > 0.0)) return;
        if (v.is_inf())
            infinite = true;
        else
            sum.add(v.value() * len);
    };

    add(f.left_tail(), std::min(I.b, xs.front()) - I.a);
    if (xs.size() > 1) {
        // cells [xs[i], xs[i+1]) with xs[i] < I.b and xs[i+1] > I.a
        auto lo = std::upper_bound(xs.begin(), xs.end(), I.a);
        size_t i = lo == xs.begin() ? 0 : static_cast<size_t>(lo - xs.begin()) - 1;
        for (; i + 1 < xs.size() && xs[i] < I.b; ++i)
            add(f.values()[i], std::min(I.b, xs[i + 1]) - std::max(I.a, xs[i]));
    }
    add(f.right_tail(), I.b - std::max(I.a, xs.back()));

    return infinite ? ExtReal::inf() : ExtReal(sum.result());
}

StepFunction restrict_to(const StepFunction& f, const Interval& I) {
    std::vector<double> grid;
    grid.push_back(I.a);
    for (double x : f.breakpoints())
        if (x > I.a && x < I.b) grid.push_back(x);
    grid.push_back(I.b);

    std::vector<ExtReal> vals;
    vals.reserve(grid.size() - 1);
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        vals.push_back(f.value_at(grid[i] + 0.5 * (grid[i + 1] - grid[i])));
    return StepFunction(std::move(grid), std::move(vals), ExtReal::inf(), ExtReal::inf());
}

StepFunction power_transform(const StepFunction& f, double e) {
    if (e == 0.0 || std::isnan(e))
        throw std::invalid_argument("power_transform: exponent must be nonzero");
    if (e < 0.0) {
        auto nonzero = [](ExtReal v) { return !v.is_zero(); };
        if (!nonzero(f.left_tail()) || !nonzero(f.right_tail()) ||
            !std::all_of(f.values().begin(), f.values().end(), nonzero))
            throw std::invalid_argument("power_transform: negative exponent needs nonvanishing values");
    }
    std::vector<ExtReal> vals;
    vals.reserve(f.values().size());
    for (ExtReal v : f.values()) vals.push_back(pow(v, e));
    return StepFunction(f.breakpoints(), std::move(vals), pow(f.left_tail(), e),
                        pow(f.right_tail(), e));
}

StepFunction reflect(const StepFunction& f) {
    std::vector<double> bs(f.breakpoints().rbegin(), f.breakpoints().rend());
    for (double& x : bs) x = -x;
    std::vector<ExtReal> vals(f.values().rbegin(), f.values().rend());
    return StepFunction(std::move(bs), std::move(vals), f.right_tail(), f.left_tail());
}

StepFunction affine(const StepFunction& f, double s, double t) {
    if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(t))
        throw std::invalid_argument("affine: need finite s > 0 and finite t");
    std::vector<double> bs(f.breakpoints());
    for (double& x : bs) x = (x - t) / s;
    return StepFunction(std::move(bs), f.values(), f.left_tail(), f.right_tail());
}

StepFunction scale(const StepFunction& f, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("scale: need finite c > 0");
    std::vector<ExtReal> vals;
    vals.reserve(f.values().size());
    for (ExtReal v : f.values()) vals.push_back(v * ExtReal(c));
    return StepFunction(f.breakpoints(), std::move(vals), f.left_tail() * ExtReal(c),
                        f.right_tail() * ExtReal(c));
}

StepFunction mul_pow(const StepFunction& g, const StepFunction& h, double e) {
    std::vector<double> grid(g.breakpoints());
    grid.insert(grid.end(), h.breakpoints().begin(), h.breakpoints().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto combine = [&](ExtReal a, ExtReal b) { return a * pow(b, e); };
    std::vector<ExtReal> vals;
    vals.reserve(grid.size() - 1);
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        double mid = grid[i] + 0.5 * (grid[i + 1] - grid[i]);
        vals.push_back(combine(g.value_at(mid), h.value_at(mid)));
    }
    return StepFunction(std::move(grid), std::move(vals),
                        combine(g.left_tail(), h.left_tail()),
                        combine(g.right_tail(), h.right_tail()));
}

}  // namespace fracmin
