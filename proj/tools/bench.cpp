// serial vs OpenMP timing for the three parallel kernels: pointwise grid
// evaluation, family class constants, and midpoint quadrature.  Also
// asserts the contract that both variants return identical bits.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracmin/minimal.hpp"
#include "fracmin/quadrature.hpp"
#include "fracmin/rng.hpp"
#include "fracmin/weights.hpp"

using namespace fracmin;

namespace {

template <class F>
double time_it(F&& f, int reps) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for (int i = 0; i < reps; ++i) f();
    const std::chrono::duration<double> dt = clock::now() - t0;
    return dt.count() / reps;
}

bool same_bits(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return a == b;
    return a.value() == b.value();
}

}  // namespace

int main(int argc, char** argv) {
    const uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
    const Interval window{0.0, 10.0};
    SplitMix64 g(seed);
    const StepFunction f = random_step_function(g, window, true, 12, 16);
    const WeightPair pair = random_weight_pair(g, window);
    const Exponents e(1.0, 1.0, 2.0);

#ifdef _OPENMP
    std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    // grid evaluation
    std::vector<double> grid(20000);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = window.a + window.length() * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(grid.size());
    std::vector<ExtReal> gp, gs;
    const double t_gp = time_it([&] { gp = minimal_plus_grid(f, e.mu, grid); }, 5);
    const double t_gs = time_it([&] { gs = minimal_plus_grid_serial(f, e.mu, grid); }, 5);
    bool ok = gp.size() == gs.size();
    for (size_t i = 0; ok && i < gp.size(); ++i) ok = same_bits(gp[i], gs[i]);
    std::printf("grid eval (%zu pts)     parallel %.4fs  serial %.4fs  speedup %.2fx  %s\n",
                grid.size(), t_gp, t_gs, t_gs / t_gp, ok ? "bitwise-equal" : "MISMATCH");
    if (!ok) return 1;

    // class constant sweep (Wpq: many small exact evaluations)
    const std::vector<Interval> family = interval_family(window, pair, 8);
    RatioReport cp, cs;
    const double t_cp =
        time_it([&] { cp = class_constant(ClassKind::Wpq, pair, e, family); }, 3);
    const double t_cs =
        time_it([&] { cs = class_constant_serial(ClassKind::Wpq, pair, e, family); }, 3);
    ok = same_bits(cp.ratio, cs.ratio) && cp.witness.a == cs.witness.a &&
         cp.witness.b == cs.witness.b;
    std::printf("class constant (%zu I)  parallel %.4fs  serial %.4fs  speedup %.2fx  %s\n",
                family.size(), t_cp, t_cs, t_cs / t_cp, ok ? "bitwise-equal" : "MISMATCH");
    if (!ok) return 1;

    // quadrature of the Sawyer integrand on one interval
    const Interval I(window.a + 1.0, window.b - 1.0);
    const StepFunction om = omega(pair.V, e.p);
    const StepFunction gI = restrict_to(om, I);
    auto integrand = [&](double x) {
        return pair.U.value_at(x) * pow(minimal_plus(gI, e.mu, x), -e.q);
    };
    std::vector<double> refine;
    for (double x : om.breakpoints())
        if (x > I.a && x < I.b) refine.push_back(x);
    QuadratureResult qp, qs;
    const double t_qp =
        time_it([&] { qp = integrate_midpoint(integrand, I, refine, 1e-9); }, 3);
    const double t_qs =
        time_it([&] { qs = integrate_midpoint_serial(integrand, I, refine, 1e-9); }, 3);
    ok = same_bits(qp.value, qs.value) && qp.cells == qs.cells &&
         qp.converged == qs.converged;
    std::printf("quadrature (%ld cells) parallel %.4fs  serial %.4fs  speedup %.2fx  %s\n",
                qp.cells, t_qp, t_qs, t_qs / t_qp, ok ? "bitwise-equal" : "MISMATCH");
    if (!ok) return 1;

    return 0;
}
