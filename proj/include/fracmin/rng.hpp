#pragma once

#include <cstdint>

#include "fracmin/interval.hpp"
#include "fracmin/minimal.hpp"
#include "fracmin/step_function.hpp"
#include "fracmin/weights.hpp"

namespace fracmin {

// splitmix64 (Steele/Lea/Flood).  Chosen for the instance generator because
// its outputs are pinned by published test vectors, so any implementation
// in any language reproduces identical instances from the same seed.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // unbiased uniform in {0, ..., n-1}
    uint64_t below(uint64_t n);

    // log-uniform in [lo, hi], lo > 0
    double log_uniform(double lo, double hi);

private:
    uint64_t state_;
};

// Seed for trial t of a suite started at seed s; spaced by the same odd
// constant splitmix64 itself increments by.
inline uint64_t trial_seed(uint64_t suite_seed, uint64_t t) {
    return suite_seed + (t + 1) * 0x9E3779B97F4A7C15ULL;
}

// Random step function per the generator contract: 2..16 breakpoints
// sorted uniform in the window, values log-uniform in [1e-3, 1e3], tails
// +inf for minimal-function instances and log-uniform finite for weights.
StepFunction random_step_function(SplitMix64& g, const Interval& window,
                                  bool infinite_tails, int min_breaks = 2,
                                  int max_breaks = 16);

WeightPair random_weight_pair(SplitMix64& g, const Interval& window);

// mu from {0, 0.5, 1, 2} and (p,q) from {(1,1), (1,2), (2,2), (0.5,1)}
Exponents random_exponents(SplitMix64& g);

}  // namespace fracmin
