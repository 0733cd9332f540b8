#include "fracmin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracmin {

uint64_t SplitMix64::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("below: n must be positive");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

double SplitMix64::log_uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(lo < hi))
        throw std::invalid_argument("log_uniform: need 0 < lo < hi");
    const double llo = std::log(lo), lhi = std::log(hi);
    return std::exp(llo + (lhi - llo) * uniform());
}

StepFunction random_step_function(SplitMix64& g, const Interval& window,
                                  bool infinite_tails, int min_breaks, int max_breaks) {
    if (min_breaks < 2 || max_breaks < min_breaks)
        throw std::invalid_argument("random_step_function: need 2 <= min_breaks <= max_breaks");
    const int n = min_breaks +
                  static_cast<int>(g.below(static_cast<uint64_t>(max_breaks - min_breaks + 1)));

    std::vector<double> bs(static_cast<size_t>(n));
    for (;;) {
        for (double& x : bs) x = window.a + window.length() * g.uniform();
        std::sort(bs.begin(), bs.end());
        if (std::adjacent_find(bs.begin(), bs.end()) == bs.end()) break;  // collisions: redraw
    }

    std::vector<ExtReal> vals(bs.size() - 1);
    for (ExtReal& v : vals) v = ExtReal(g.log_uniform(1e-3, 1e3));
    ExtReal lt = infinite_tails ? ExtReal::inf() : ExtReal(g.log_uniform(1e-3, 1e3));
    ExtReal rt = infinite_tails ? ExtReal::inf() : ExtReal(g.log_uniform(1e-3, 1e3));
    return StepFunction(std::move(bs), std::move(vals), lt, rt);
}

WeightPair random_weight_pair(SplitMix64& g, const Interval& window) {
    StepFunction U = random_step_function(g, window, false);
    StepFunction V = random_step_function(g, window, false);
    return WeightPair(std::move(U), std::move(V));
}

Exponents random_exponents(SplitMix64& g) {
    static constexpr double mus[] = {0.0, 0.5, 1.0, 2.0};
    static constexpr double pqs[][2] = {{1.0, 1.0}, {1.0, 2.0}, {2.0, 2.0}, {0.5, 1.0}};
    const double mu = mus[g.below(4)];
    const auto& pq = pqs[g.below(4)];
    return Exponents(mu, pq[0], pq[1]);
}

}  // namespace fracmin
