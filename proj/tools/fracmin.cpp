// command-line front end: eval, constant, decompose, verify, generate
//
// exit codes: 0 ok, 1 exact-check failure, 2 malformed input / unknown
// selection, 3 validation failure, 4 quadrature non-convergence,
// 5 envelope-check failure

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracmin/json_io.hpp"
#include "fracmin/minimal.hpp"
#include "fracmin/rng.hpp"
#include "fracmin/theorems.hpp"
#include "fracmin/weights.hpp"

namespace {

using namespace fracmin;

constexpr int kExitExact = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitValidation = 3;
constexpr int kExitQuadrature = 4;
constexpr int kExitEnvelope = 5;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw json::parse_error::create(101, 0, "cannot open " + path, nullptr);
    return json::parse(in);
}

Interval parse_window(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("window must be given as a,b");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::string ext_str(ExtReal v) {
    return v.is_inf() ? std::string("inf") : format17(v.value());
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << j.dump(2) << '\n';
    }
}

int cmd_eval(const std::string& f_path, double mu, const std::vector<double>& xs,
             bool minus, bool oracle, double h_max, int oracle_n) {
    const StepFunction f = step_function_from_json(load_json(f_path));
    for (double x : xs) {
        const ExtReal m = minus ? minimal_minus(f, mu, x) : minimal_plus(f, mu, x);
        std::cout << ext_str(m) << '\n';
        if (oracle) {
            // the backward oracle is the forward oracle of the reflection
            const ExtReal o = minus
                                  ? minimal_plus_oracle(reflect(f), mu, -x, h_max, oracle_n)
                                  : minimal_plus_oracle(f, mu, x, h_max, oracle_n);
            std::cout << ext_str(o) << '\n';
        }
    }
    return 0;
}

int cmd_constant(const std::string& pair_path, const std::string& kind_name,
                 const Exponents& e, double eta, const Interval& window,
                 int refinement, double tol, const std::string& out_path) {
    const WeightPair pair = weight_pair_from_json(load_json(pair_path));
    ClassKind kind;
    if (kind_name == "wpq")
        kind = ClassKind::Wpq;
    else if (kind_name == "wpq_eta")
        kind = ClassKind::WpqEta;
    else if (kind_name == "sawyer_star")
        kind = ClassKind::SawyerStar;
    else {
        std::cerr << "unknown class kind: " << kind_name << '\n';
        return kExitMalformed;
    }
    const std::vector<Interval> family = interval_family(window, pair, refinement);
    const RatioReport r = class_constant(kind, pair, e, family, eta, tol);
    emit(to_json(r), out_path);
    if (!r.converged) {
        std::cerr << "quadrature did not converge\n";
        return kExitQuadrature;
    }
    return 0;
}

int cmd_decompose(const Interval& I, int depth, const std::string& out_path) {
    const PlusMinusDecomposition d = plus_minus(I, depth);
    json j;
    j["base"] = to_json(d.base);
    j["points"] = d.points;
    json minus = json::array(), plus = json::array(), full = json::array();
    for (const auto& v : d.minus) minus.push_back(to_json(v));
    for (const auto& v : d.plus) plus.push_back(to_json(v));
    for (const auto& v : d.full) full.push_back(to_json(v));
    j["minus"] = minus;
    j["plus"] = plus;
    j["full"] = full;
    emit(j, out_path);
    return 0;
}

int cmd_verify(const SuiteConfig& cfg, const std::string& out_path,
               const std::string& format) {
    static const char* names[] = {"all",  "fml1", "fmt1", "fmt2",
                                  "fmt3", "fmt4", "fmt5", "fmc1"};
    bool known = false;
    for (const char* n : names) known = known || cfg.theorem == n;
    if (!known) {
        std::cerr << "unknown theorem: " << cfg.theorem << '\n';
        return kExitMalformed;
    }

    const std::vector<CheckResult> results = run_suite(cfg);
    const json report = suite_report(cfg, results);
    const std::string csv = suite_csv(results);
    if (out_path.empty()) {
        if (format == "csv")
            std::cout << csv;
        else
            std::cout << report.dump(2) << '\n';
    } else {
        std::ofstream jf(out_path + ".json");
        std::ofstream cf(out_path + ".csv");
        if (!jf || !cf) throw std::invalid_argument("cannot write " + out_path);
        jf << report.dump(2) << '\n';
        cf << csv;
    }

    bool exact_fail = false, envelope_fail = false;
    for (const auto& c : results) {
        if (c.passed) continue;
        (c.kind == CheckKind::Exact ? exact_fail : envelope_fail) = true;
        std::cerr << "FAIL [" << (c.kind == CheckKind::Exact ? "exact" : "envelope")
                  << "] " << c.name << "  lhs=" << ext_str(c.lhs)
                  << " rhs=" << ext_str(c.rhs) << '\n';
    }
    if (exact_fail) return kExitExact;
    if (envelope_fail) return kExitEnvelope;
    return 0;
}

int cmd_generate(uint64_t seed, const Interval& window, const std::string& kind,
                 bool finite_tails, int min_breaks, int max_breaks,
                 const std::string& out_path) {
    SplitMix64 g(seed);
    json j;
    if (kind == "pair") {
        j = to_json(random_weight_pair(g, window));
    } else if (kind == "function") {
        j = to_json(random_step_function(g, window, !finite_tails, min_breaks, max_breaks));
    } else {
        std::cerr << "unknown generate kind: " << kind << '\n';
        return kExitMalformed;
    }
    emit(j, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided fractional minimal function toolkit"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate m_mu^+ (or m_mu^-) pointwise");
    std::string eval_f;
    double eval_mu = 0.0;
    std::vector<double> eval_xs;
    bool eval_minus = false, eval_oracle = false;
    double eval_hmax = 100.0;
    int eval_n = 4096;
    eval->add_option("--f", eval_f, "step function JSON file")->required();
    eval->add_option("--mu", eval_mu, "order mu >= 0");
    eval->add_option("--x", eval_xs, "evaluation points")->required();
    eval->add_flag("--minus", eval_minus, "evaluate m_mu^- instead");
    eval->add_flag("--oracle", eval_oracle, "also print the brute-force oracle value");
    eval->add_option("--h-max", eval_hmax, "oracle horizon");
    eval->add_option("--oracle-n", eval_n, "oracle grid size");

    // constant
    auto* constant = app.add_subcommand("constant", "family class constant");
    std::string c_pair, c_kind = "wpq", c_out, c_window = "0,10";
    double c_mu = 0.0, c_p = 1.0, c_q = 1.0, c_eta = 0.5, c_tol = 1e-6;
    int c_refinement = 4;
    constant->add_option("--pair", c_pair, "weight pair JSON file")->required();
    constant->add_option("--kind", c_kind, "wpq | wpq_eta | sawyer_star");
    constant->add_option("--mu", c_mu, "order mu >= 0");
    constant->add_option("--p", c_p, "exponent p");
    constant->add_option("--q", c_q, "exponent q");
    constant->add_option("--eta", c_eta, "eta for wpq_eta");
    constant->add_option("--window", c_window, "window a,b");
    constant->add_option("--refinement", c_refinement, "family grid refinement");
    constant->add_option("--tol", c_tol, "quadrature tolerance");
    constant->add_option("--out", c_out, "output path (default stdout)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "plus-minus decomposition");
    std::string d_interval = "0,1", d_out;
    int d_depth = 3;
    decompose->add_option("--interval", d_interval, "interval a,b")->required();
    decompose->add_option("--depth", d_depth, "decomposition depth")->required();
    decompose->add_option("--out", d_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the theorem check suites");
    SuiteConfig cfg;
    std::string v_window = "0,10", v_out, v_format = "json";
    verify->add_option("--theorem", cfg.theorem, "fml1|fmt1|fmt2|fmt3|fmt4|fmt5|fmc1|all");
    verify->add_option("--trials", cfg.trials, "seeded trials per theorem");
    verify->add_option("--seed", cfg.seed, "suite seed");
    verify->add_option("--window", v_window, "window a,b");
    verify->add_option("--refinement", cfg.refinement, "grid refinement");
    verify->add_option("--tol", cfg.tol, "quadrature tolerance");
    verify->add_option("--out", v_out, "report base path (writes .json and .csv)");
    verify->add_option("--format", v_format, "stdout format: json | csv");

    // generate
    auto* generate = app.add_subcommand("generate", "write a seeded random instance");
    std::string g_kind = "pair", g_window = "0,10", g_out;
    uint64_t g_seed = 1;
    bool g_finite = false;
    int g_min = 2, g_max = 16;
    generate->add_option("--seed", g_seed, "generator seed");
    generate->add_option("--kind", g_kind, "pair | function");
    generate->add_option("--window", g_window, "window a,b");
    generate->add_flag("--finite-tails", g_finite, "finite tails instead of +inf");
    generate->add_option("--min-breaks", g_min, "minimum breakpoint count");
    generate->add_option("--max-breaks", g_max, "maximum breakpoint count");
    generate->add_option("--out", g_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed())
            return cmd_eval(eval_f, eval_mu, eval_xs, eval_minus, eval_oracle, eval_hmax,
                            eval_n);
        if (constant->parsed())
            return cmd_constant(c_pair, c_kind, Exponents(c_mu, c_p, c_q), c_eta,
                                parse_window(c_window), c_refinement, c_tol, c_out);
        if (decompose->parsed())
            return cmd_decompose(parse_window(d_interval), d_depth, d_out);
        if (verify->parsed()) {
            cfg.window = parse_window(v_window);
            return cmd_verify(cfg, v_out, v_format);
        }
        if (generate->parsed())
            return cmd_generate(g_seed, parse_window(g_window), g_kind, g_finite, g_min,
                                g_max, g_out);
    } catch (const json::exception& ex) {
        std::cerr << "malformed input: " << ex.what() << '\n';
        return kExitMalformed;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "validation error: " << ex.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
