#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracmin/rng.hpp"
#include "fracmin/theorems.hpp"

using namespace fracmin;

namespace {

WeightPair constants() {
    return WeightPair(StepFunction::constant(ExtReal(1.0)),
                      StepFunction::constant(ExtReal(1.0)));
}

}  // namespace

TEST_CASE("check_leq and slack") {
    CHECK(check_leq(ExtReal(1.0), ExtReal(2.0)));
    CHECK(check_leq(ExtReal(1.0), ExtReal(1.0)));
    CHECK(check_leq(ExtReal(1.0), ExtReal(1.0 - 1e-12)));  // inside the slack
    CHECK_FALSE(check_leq(ExtReal(1.1), ExtReal(1.0)));
    CHECK(check_leq(ExtReal(5.0), ExtReal::inf()));
    CHECK_FALSE(check_leq(ExtReal::inf(), ExtReal(5.0)));
    CHECK(check_leq(ExtReal::inf(), ExtReal::inf()));
    CHECK(slack_of(ExtReal(1.0), ExtReal(2.0)) == doctest::Approx(2.0));
    CHECK(slack_of(ExtReal::inf(), ExtReal::inf()) == 1.0);
    CHECK(std::isinf(slack_of(ExtReal(0.0), ExtReal(1.0))));
}

TEST_CASE("covering bound") {
    const StepFunction one = StepFunction::constant(ExtReal(1.0));
    {
        // adjacent pieces, mu = 0: 2 <= 1 * (2*2)^1
        std::vector<Interval> pieces{{0.0, 1.0}, {1.0, 2.0}};
        const CheckResult c = check_covering(one, 0.0, pieces, 1.0);
        CHECK(c.passed);
        CHECK(c.kind == CheckKind::Exact);
        CHECK(c.lhs.value() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(c.rhs.value() == doctest::Approx(4.0).epsilon(1e-12));
    }
    {
        // overlapping pieces, mu = 1: union [0,2], 2 <= 1 * 4^2
        std::vector<Interval> pieces{{0.0, 1.5}, {0.5, 2.0}};
        const CheckResult c = check_covering(one, 1.0, pieces, 1.0);
        CHECK(c.passed);
        CHECK(c.lhs.value() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(c.rhs.value() == doctest::Approx(16.0).epsilon(1e-12));
    }
    {
        // hypothesis violated: integral 1 > C * 1^{1+mu} for C = 0.5
        std::vector<Interval> pieces{{0.0, 1.0}};
        CHECK_THROWS_AS(check_covering(one, 0.0, pieces, 0.5), std::invalid_argument);
    }
    {
        std::vector<Interval> none;
        CHECK_THROWS_AS(check_covering(one, 0.0, none, 1.0), std::invalid_argument);
        std::vector<Interval> pieces{{0.0, 1.0}};
        CHECK_THROWS_AS(check_covering(one, -1.0, pieces, 1.0), std::invalid_argument);
    }
}

TEST_CASE("smallest halving count") {
    CHECK(smallest_halving_count(0.5) == 1);
    CHECK(smallest_halving_count(0.74) == 2);
    CHECK(smallest_halving_count(0.75) == 2);
    CHECK(smallest_halving_count(0.76) == 3);
    CHECK(smallest_halving_count(0.9) == 4);
    CHECK(smallest_halving_count(0.99) == 7);
    CHECK_THROWS_AS(smallest_halving_count(1.0), std::invalid_argument);
    CHECK_THROWS_AS(smallest_halving_count(0.0), std::invalid_argument);
}

TEST_CASE("fmt1 forward factor identity on constants") {
    const WeightPair cp = constants();
    const Exponents e(0.0, 1.0, 1.0);
    const std::vector<Interval> fam = interval_family({0.0, 10.0}, cp, 2);
    const CheckResult c = check_fmt1_forward(cp, e, fam);
    CHECK(c.passed);
    CHECK(c.kind == CheckKind::Exact);
    CHECK(c.slack == doctest::Approx(1.0).epsilon(1e-9));  // equality case
}

TEST_CASE("fmt1 case I") {
    const WeightPair cp = constants();
    const Exponents e(0.0, 1.0, 1.0);
    const CheckResult c = check_fmt1_case1(cp, e, {0.0, 1.0}, 0.25);
    CHECK(c.passed);
    CHECK(c.lhs.value() == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
    CHECK(c.rhs.value() == doctest::Approx(1.0).epsilon(1e-12));

    // eta = 1/2 degenerates to the exact factor identity
    const CheckResult h = check_fmt1_case1(cp, e, {0.0, 1.0}, 0.5);
    CHECK(h.passed);
    CHECK(h.slack == doctest::Approx(4.0).epsilon(1e-9));  // 2^{1+s} with s = 1

    CHECK_THROWS_AS(check_fmt1_case1(cp, e, {0.0, 1.0}, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(check_fmt1_case1(cp, e, {0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("fmt1 case II") {
    const WeightPair cp = constants();
    const Exponents e(0.0, 1.0, 1.0);
    const CheckResult c = check_fmt1_case2(cp, e, {0.0, 1.0}, 0.74);
    CHECK(c.passed);
    CHECK(c.kind == CheckKind::Envelope);
    CHECK(c.witness["n0"] == 2);
    CHECK(c.witness["covering"] == true);
    CHECK(double(c.witness["geometric_slack"]) >= 1.0 - 1e-9);

    const CheckResult d = check_fmt1_case2(cp, Exponents(1.0, 1.0, 1.0), {3.0, 5.0}, 0.9);
    CHECK(d.passed);
    CHECK(d.witness["n0"] == 4);

    CHECK_THROWS_AS(check_fmt1_case2(cp, e, {0.0, 1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(check_fmt1_case2(cp, e, {0.0, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("weak type ratio preconditions") {
    const WeightPair cp = constants();
    const StepFunction finite_tails = StepFunction::constant(ExtReal(1.0));
    CHECK_THROWS_AS(
        weak_type_ratio(cp, finite_tails, Exponents(0.0, 1.0, 1.0), 1.0, {0.0, 1.0}, 4),
        std::invalid_argument);
    const StepFunction f = restrict_to(finite_tails, {0.0, 1.0});
    CHECK_THROWS_AS(weak_type_ratio(cp, f, Exponents(0.0, 1.0, 1.0), -1.0, {0.0, 1.0}, 4),
                    std::invalid_argument);
    const RatioReport r =
        weak_type_ratio(cp, f, Exponents(0.0, 1.0, 1.0), 0.5, {0.0, 1.0}, 4);
    CHECK(r.kind == ClassKind::WeakType);
    // whole support is below threshold 2: U([0,1]) / (0.5^{-1} * 1) = 1/2
    CHECK(r.ratio.value() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fmt2 necessity on constants") {
    const CheckResult c =
        check_fmt2_necessity(constants(), Exponents(0.0, 1.0, 1.0), {0.0, 2.0}, 16);
    CHECK(c.passed);
    CHECK(c.kind == CheckKind::Exact);
    CHECK(c.lhs.value() == doctest::Approx(1.0).epsilon(1e-12));  // U(I^-)
    CHECK(c.rhs.value() == doctest::Approx(2.0).epsilon(1e-6));   // U(outer) * (1+eps)
    CHECK(c.witness["inclusion"] == true);
    CHECK(double(c.witness["identity_vf_omega_relerr"]) <= 1e-12);
    CHECK(double(c.witness["identity_lambda_wpq_relerr"]) <= 1e-12);
}

TEST_CASE("fmt2 sufficiency vacuous and flagged runs") {
    const WeightPair cp = constants();
    const StepFunction f = restrict_to(StepFunction::constant(ExtReal(1.0)), {0.0, 1.0});
    {
        // mu = 0: m is identically 1 on [0,1), lambda > 1 empties the set
        const std::vector<double> ls{1.01};
        const CheckResult c =
            check_fmt2_sufficiency(cp, Exponents(0.0, 1.0, 1.0), f, ls, {0.0, 1.0}, 8);
        CHECK(c.passed);
        CHECK(c.lhs.is_zero());
        CHECK(c.witness["eight_bound_flags"].empty());
    }
    {
        // mu = 1: inner components end strictly inside [0,1]; deep pieces
        // overshoot the asserted 8-bound and must be flagged, while the
        // envelope bound itself still holds
        const std::vector<double> ls{0.5};
        const CheckResult c =
            check_fmt2_sufficiency(cp, Exponents(1.0, 1.0, 1.0), f, ls, {0.0, 1.0}, 8);
        CHECK(c.passed);
        CHECK_FALSE(c.witness["eight_bound_flags"].empty());
    }
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(
        check_fmt2_sufficiency(cp, Exponents(0.0, 1.0, 1.0), f, bad, {0.0, 1.0}, 4),
        std::invalid_argument);
}

TEST_CASE("strong type ratio closed form") {
    const StepFunction f = restrict_to(StepFunction::constant(ExtReal(1.0)), {0.0, 1.0});
    const RatioReport r =
        strong_type_ratio(constants(), f, Exponents(1.0, 1.0, 1.0), {0.0, 1.0}, 1e-8);
    CHECK(r.converged);
    CHECK(r.kind == ClassKind::StrongType);
    // integrand (1-x), integral 1/2; denominator 1
    CHECK(r.ratio.value() == doctest::Approx(0.5).epsilon(1e-7));

    // homogeneity: scaling f leaves the ratio unchanged
    const RatioReport s = strong_type_ratio(constants(), scale(f, 3.0),
                                            Exponents(1.0, 1.0, 1.0), {0.0, 1.0}, 1e-8);
    CHECK(s.ratio.value() == doctest::Approx(r.ratio.value()).epsilon(1e-9));
}

TEST_CASE("fmt3 substitution matches sawyer") {
    SplitMix64 g(53);
    const WeightPair pair = random_weight_pair(g, {0.0, 10.0});
    const Exponents e = random_exponents(g);
    const Interval I(2.0, 7.0);
    const StepFunction f = restrict_to(omega(pair.V, e.p), I);
    const RatioReport strong = strong_type_ratio(pair, f, e, I, 1e-7);
    const RatioReport saw = sawyer_ratio(pair, e, I, 1e-7);
    REQUIRE(strong.converged);
    REQUIRE(saw.converged);
    CHECK(strong.ratio.value() ==
          doctest::Approx(saw.ratio.value()).epsilon(1e-9));
}

TEST_CASE("fmt3 envelope on constants") {
    const WeightPair cp = constants();
    const Exponents e(1.0, 1.0, 1.0);
    const std::vector<Interval> fam{{0.0, 1.0}, {0.0, 0.5}, {0.25, 1.0}};
    std::vector<StepFunction> fs;
    fs.push_back(restrict_to(omega(cp.V, e.p), Interval(0.0, 1.0)));
    const CheckResult c = check_fmt3(cp, e, fam, fs, 1e-7);
    CHECK(c.passed);
    CHECK(c.kind == CheckKind::Envelope);
    CHECK(c.witness["sawyer_converged"] == true);
    CHECK(int(c.witness["unconverged_fs"]) == 0);
}

TEST_CASE("fmt4 on constants") {
    const CheckResult c =
        check_fmt4(constants(), Exponents(1.0, 1.0, 1.0), {0.0, 2.0}, 1e-8);
    CHECK(c.passed);
    CHECK(double(c.witness["ratio"]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(double(c.witness["epsilon_identity_relerr"]) <= 1e-12);
    // chain constant for constants at mu=1, p=q=1: 1 + 1*9*16 * 2 * 1
    CHECK(double(c.witness["harness_constant"]) == doctest::Approx(289.0));
}

TEST_CASE("fmt5 decay on constants") {
    const CheckResult c =
        check_fmt5(constants(), Exponents(1.0, 1.0, 1.0), {0.0, 2.0}, 0.5, 12, 1e-7);
    CHECK(c.passed);
    CHECK(c.witness["monotone"] == true);
    // T_l proportional to |K_l|^{1+mu*q}: successive ratio shrink^2
    const double t0 = double(c.witness["T"][0]);
    const double t1 = double(c.witness["T"][1]);
    CHECK(t1 / t0 == doctest::Approx(0.25).epsilon(1e-6));

    CHECK_THROWS_AS(
        check_fmt5(constants(), Exponents(1.0, 1.0, 1.0), {0.0, 2.0}, 1.5, 12, 1e-7),
        std::invalid_argument);
    CHECK_THROWS_AS(
        check_fmt5(constants(), Exponents(1.0, 1.0, 1.0), {0.0, 2.0}, 0.5, 1, 1e-7),
        std::invalid_argument);
}

TEST_CASE("fmc1 telescoping on constants") {
    const CheckResult c =
        check_fmc1(constants(), Exponents(0.0, 1.0, 1.0), {0.0, 1.0}, 1e-7);
    CHECK(c.passed);
    CHECK(c.kind == CheckKind::Exact);
    CHECK(c.witness["overlap_ok"] == true);
    // sum of |J_k| = 1.5 * (1 - 2^{-20}) against 2 * 1
    CHECK(double(c.witness["sum_lhs"]) == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(double(c.witness["sum_rhs"]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(double(c.witness["piecewise_vs_direct_relerr"]) <= 1e-4);
}

TEST_CASE("suite determinism and selection") {
    SuiteConfig cfg;
    cfg.theorem = "fmt5";
    cfg.trials = 2;
    const std::vector<CheckResult> a = run_suite(cfg);
    const std::vector<CheckResult> b = run_suite(cfg);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() == 4);  // two fixtures plus two trials
    CHECK(suite_report(cfg, a).dump() == suite_report(cfg, b).dump());
    CHECK(suite_csv(a) == suite_csv(b));

    SuiteConfig bad = cfg;
    bad.theorem = "fmt9";
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);

    SuiteConfig fixtures_only;
    fixtures_only.theorem = "fml1";
    fixtures_only.trials = 0;
    CHECK(run_suite(fixtures_only).size() == 3);
}

TEST_CASE("csv shape") {
    SuiteConfig cfg;
    cfg.theorem = "fml1";
    cfg.trials = 1;
    const std::vector<CheckResult> rs = run_suite(cfg);
    const std::string csv = suite_csv(rs);
    CHECK(csv.rfind("name,passed,kind,lhs,rhs,slack,seed,mu,p,q\n", 0) == 0);
    size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == rs.size() + 1);
}
