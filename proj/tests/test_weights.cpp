#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracmin/minimal.hpp"
#include "fracmin/rng.hpp"
#include "fracmin/weights.hpp"

using namespace fracmin;

namespace {

WeightPair constants() {
    return WeightPair(StepFunction::constant(ExtReal(1.0)),
                      StepFunction::constant(ExtReal(1.0)));
}

WeightPair two_cell_v() {
    // U = 1; V = 1 on [0,1), 16 on [1,2), matching tails
    StepFunction V({0.0, 1.0, 2.0}, {ExtReal(1.0), ExtReal(16.0)}, ExtReal(1.0),
                   ExtReal(16.0));
    return WeightPair(StepFunction::constant(ExtReal(1.0)), std::move(V));
}

// plain midpoint sum with a fixed fine grid, independent of the library's
// adaptive quadrature
double flat_midpoint(const WeightPair& pair, const Exponents& e, const Interval& I,
                     int n) {
    const StepFunction om = omega(pair.V, e.p);
    const StepFunction g = restrict_to(om, I);
    double sum = 0.0;
    const double h = I.length() / n;
    for (int i = 0; i < n; ++i) {
        const double x = I.a + (i + 0.5) * h;
        sum += (pair.U.value_at(x) * pow(minimal_plus(g, e.mu, x), -e.q)).value() * h;
    }
    return sum;
}

}  // namespace

TEST_CASE("weight pair validation") {
    StepFunction zero({0.0, 1.0}, {ExtReal(0.0)}, ExtReal(1.0), ExtReal(1.0));
    CHECK_THROWS_AS(WeightPair(zero, StepFunction::constant(ExtReal(1.0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightPair(StepFunction::constant(ExtReal(1.0)), zero),
                    std::invalid_argument);
}

TEST_CASE("omega") {
    CHECK(omega(StepFunction::constant(ExtReal(16.0)), 1.0).value_at(0.0).value() ==
          doctest::Approx(4.0).epsilon(1e-15));
    CHECK(omega(StepFunction::constant(ExtReal(8.0)), 2.0).value_at(0.0).value() ==
          doctest::Approx(2.0).epsilon(1e-15));
    // round-trip: omega(om^{p+1}, p) = om
    const StepFunction om = StepFunction::constant(ExtReal(3.0));
    const StepFunction back = omega(power_transform(om, 3.0), 2.0);
    CHECK(back.value_at(0.0).value() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(omega(om, 0.0), std::invalid_argument);
}

TEST_CASE("plus_minus recursion") {
    const PlusMinusDecomposition d = plus_minus({0.0, 1.0}, 3);
    REQUIRE(d.points.size() == 5);
    const double want[] = {0.0, 0.5, 0.75, 0.875, 0.9375};
    for (size_t i = 0; i < 5; ++i) CHECK(d.points[i] == doctest::Approx(want[i]));
    CHECK(d.minus[0] == Interval(0.0, 0.5));
    CHECK(d.plus[0] == Interval(0.5, 0.75));
    CHECK(d.full[0] == Interval(0.0, 0.75));
    for (int k = 1; k <= 3; ++k) {
        const auto& jm = d.minus[static_cast<size_t>(k - 1)];
        const auto& jp = d.plus[static_cast<size_t>(k - 1)];
        const auto& jf = d.full[static_cast<size_t>(k - 1)];
        CHECK(jm.length() == doctest::Approx(std::pow(2.0, -k)).epsilon(1e-15));
        CHECK(jm.length() == doctest::Approx(2.0 * jp.length()).epsilon(1e-15));
        CHECK(jf.length() == doctest::Approx(3.0 * jp.length()).epsilon(1e-15));
    }
    CHECK_THROWS_AS(plus_minus({0.0, 1.0}, 0), std::invalid_argument);

    // translation shifts every point
    const PlusMinusDecomposition t = plus_minus({2.0, 3.0}, 3);
    for (size_t i = 0; i < 5; ++i)
        CHECK(t.points[i] == doctest::Approx(want[i] + 2.0).epsilon(1e-15));
}

TEST_CASE("wpq ratio fixtures") {
    const RatioReport c = wpq_ratio(constants(), Exponents(0.0, 1.0, 1.0), {3.0, 7.0});
    CHECK(c.ratio.value() == doctest::Approx(1.0).epsilon(1e-12));

    const RatioReport t = wpq_ratio(two_cell_v(), Exponents(0.0, 1.0, 1.0), {0.0, 2.0});
    CHECK(t.ratio.value() == doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("wpq scaling law") {
    SplitMix64 g(29);
    for (int trial = 0; trial < 10; ++trial) {
        const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
        const Exponents e = random_exponents(g);
        const Interval I(1.0 + 4.0 * g.uniform(), 6.0 + 3.0 * g.uniform());
        const double t = g.log_uniform(0.1, 10.0), s = g.log_uniform(0.1, 10.0);
        const WeightPair scaled(scale(pair.U, t), scale(pair.V, s));
        const double base = wpq_ratio(pair, e, I).ratio.value();
        const double got = wpq_ratio(scaled, e, I).ratio.value();
        CHECK(got == doctest::Approx(t * std::pow(s, -e.q / e.p) * base).epsilon(1e-11));
    }
}

TEST_CASE("wpq_eta fixtures and factor identity") {
    const RatioReport r =
        wpq_eta_ratio(constants(), Exponents(0.0, 1.0, 1.0), {0.0, 1.0}, 0.25);
    CHECK(r.ratio.value() == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
    CHECK_THROWS_AS(wpq_eta_ratio(constants(), Exponents(0.0, 1.0, 1.0), {0.0, 1.0}, 1.0),
                    std::invalid_argument);

    SplitMix64 g(31);
    for (int trial = 0; trial < 10; ++trial) {
        const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
        const Exponents e = random_exponents(g);
        const Interval I(4.0 * g.uniform(), 6.0 + 3.0 * g.uniform());
        const double s = (1.0 + e.mu) * e.q;
        const double half = wpq_eta_ratio(pair, e, I, 0.5).ratio.value();
        const double plain = wpq_ratio(pair, e, I).ratio.value();
        CHECK(half ==
              doctest::Approx(plain * std::pow(2.0, -(1.0 + s))).epsilon(1e-12));
    }
}

TEST_CASE("sawyer closed forms") {
    const Exponents e11(0.0, 1.0, 1.0);
    const RatioReport a = sawyer_ratio(constants(), e11, {0.0, 1.0}, 1e-9);
    CHECK(a.converged);
    CHECK(a.ratio.value() == doctest::Approx(1.0).epsilon(1e-8));

    // mu=1, p=q=1, I=[0,L]: ratio = L/2
    const Exponents em(1.0, 1.0, 1.0);
    const RatioReport b = sawyer_ratio(constants(), em, {0.0, 1.0}, 1e-9);
    CHECK(b.ratio.value() == doctest::Approx(0.5).epsilon(1e-8));
    const RatioReport c = sawyer_ratio(constants(), em, {0.0, 3.0}, 1e-9);
    CHECK(c.ratio.value() == doctest::Approx(1.5).epsilon(1e-8));

    // |I| = 1 generally: 1/(mu*q + 1)
    for (const Exponents& e :
         {Exponents(0.5, 1.0, 2.0), Exponents(2.0, 2.0, 2.0), Exponents(1.0, 0.5, 1.0)}) {
        const RatioReport r = sawyer_ratio(constants(), e, {2.0, 3.0}, 1e-9);
        CHECK(r.ratio.value() ==
              doctest::Approx(1.0 / (e.mu * e.q + 1.0)).epsilon(1e-7));
    }
}

TEST_CASE("sawyer against a flat-grid oracle") {
    SplitMix64 g(37);
    for (int trial = 0; trial < 5; ++trial) {
        const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
        const Exponents e = random_exponents(g);
        const Interval I(1.0 + 3.0 * g.uniform(), 6.0 + 3.0 * g.uniform());
        const RatioReport r = sawyer_ratio(pair, e, I, 1e-8);
        REQUIRE(r.converged);
        const double denom =
            pow(integrate(omega(pair.V, e.p), I), e.q / e.p).value();
        const double oracle = flat_midpoint(pair, e, I, 200000) / denom;
        CHECK(r.ratio.value() == doctest::Approx(oracle).epsilon(1e-4));
    }
}

TEST_CASE("sawyer translation invariance") {
    SplitMix64 g(41);
    const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
    const Exponents e(1.0, 1.0, 2.0);
    const Interval I(2.0, 6.0);
    const double t0 = 11.0;
    // affine(f,1,t0)(x) = f(x + t0): the pair shifted left by t0
    const WeightPair shifted(affine(pair.U, 1.0, t0), affine(pair.V, 1.0, t0));
    const RatioReport base = sawyer_ratio(pair, e, I, 1e-8);
    const RatioReport moved = sawyer_ratio(shifted, e, {I.a - t0, I.b - t0}, 1e-8);
    CHECK(moved.ratio.value() ==
          doctest::Approx(base.ratio.value()).epsilon(1e-7));
}

TEST_CASE("interval family combinatorics") {
    const WeightPair cp = constants();
    const std::vector<Interval> single = interval_family({0.0, 1.0}, cp, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == Interval(0.0, 1.0));

    // grid of n points gives n(n-1)/2 intervals
    const std::vector<Interval> f4 = interval_family({0.0, 1.0}, cp, 4);
    CHECK(f4.size() == 5 * 4 / 2);

    // breakpoints inside the window join the grid
    const std::vector<Interval> f2 = interval_family({0.0, 2.0}, two_cell_v(), 1);
    CHECK(f2.size() == 3 * 2 / 2);  // grid {0, 1, 2}

    CHECK_THROWS_AS(interval_family({0.0, 1.0}, cp, 0), std::invalid_argument);
}

TEST_CASE("class constant witnesses recompute") {
    SplitMix64 g(43);
    const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
    const Exponents e = random_exponents(g);
    const std::vector<Interval> fam = interval_family({0.0, 10.0}, pair, 2);

    const RatioReport w = class_constant(ClassKind::Wpq, pair, e, fam);
    CHECK(w.ratio == wpq_ratio(pair, e, w.witness).ratio);
    for (const Interval& I : fam)
        CHECK(wpq_ratio(pair, e, I).ratio <= w.ratio);

    const RatioReport we = class_constant(ClassKind::WpqEta, pair, e, fam, 0.25);
    CHECK(we.ratio == wpq_eta_ratio(pair, e, we.witness, 0.25).ratio);

    CHECK_THROWS_AS(class_constant(ClassKind::WeakType, pair, e, fam),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        class_constant(ClassKind::Wpq, pair, e, std::vector<Interval>{}),
        std::invalid_argument);
}

TEST_CASE("class constant is monotone in the family") {
    SplitMix64 g(47);
    const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
    const Exponents e = random_exponents(g);
    const std::vector<Interval> small = interval_family({0.0, 10.0}, pair, 1);
    const std::vector<Interval> large = interval_family({0.0, 10.0}, pair, 2);
    CHECK(class_constant(ClassKind::Wpq, pair, e, small).ratio <=
          class_constant(ClassKind::Wpq, pair, e, large).ratio);
}

TEST_CASE("class kind names") {
    CHECK(to_string(ClassKind::Wpq) == "wpq");
    CHECK(to_string(ClassKind::WpqEta) == "wpq_eta");
    CHECK(to_string(ClassKind::SawyerStar) == "sawyer_star");
    CHECK(to_string(ClassKind::WeakType) == "weak_type");
    CHECK(to_string(ClassKind::StrongType) == "strong_type");
}
