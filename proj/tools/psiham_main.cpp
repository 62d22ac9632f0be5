// psiham: solve, evaluate, verify and export figure data for the
// psi-Caputo fractional tube/planar flow problems.

#include "psiham/errors.hpp"
#include "psiham/ham.hpp"
#include "psiham/problems.hpp"
#include "psiham/serialize.hpp"
#include "psiham/special.hpp"
#include "psiham/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;       // flag/grid validation failures
constexpr int kExitRegion = 3;      // convergence-region violations
constexpr int kExitBudget = 1;      // verify: residual above budget

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// Inclusive range "lo:hi:count", or a single value token.
struct Range {
    double lo = 0.0, hi = 0.0;
    int count = 1;

    static Range parse(const std::string& token) {
        Range r;
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            r.lo = r.hi = std::stod(token);
            r.count = 1;
            return r;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw psiham::ParameterError("range '" + token + "': expected lo:hi:count");
        r.lo = std::stod(token.substr(0, c1));
        r.hi = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
        r.count = std::stoi(token.substr(c2 + 1));
        if (r.count < 1) throw psiham::ParameterError("range '" + token + "': count must be >= 1");
        if (r.count == 1 && r.lo != r.hi)
            throw psiham::ParameterError("range '" + token + "': count 1 needs lo == hi");
        if (r.hi < r.lo) throw psiham::ParameterError("range '" + token + "': hi < lo");
        return r;
    }

    std::vector<double> values() const {
        std::vector<double> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
        return out;
    }
};

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw psiham::ParameterError("empty list '" + csv + "'");
    return out;
}

struct ProblemFlags {
    std::string app;
    std::string psi = "identity";
    double a = 0.0;
    double nu = 1.0;
    double pressure = 1.0;
    double rho0 = 1.0;
    double g = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--app", app, "application: tube-pressure | tube | planar");
        cmd->add_option("--psi", psi, "time rescaling: identity | log");
        cmd->add_option("--a", a, "lower terminal a");
        cmd->add_option("--nu", nu, "kinematic viscosity (tube problems)");
        cmd->add_option("--P", pressure, "pressure forcing (tube-pressure)");
        cmd->add_option("--rho0", rho0, "kinematic viscosity (planar system)");
        cmd->add_option("--g", g, "constant pressure-gradient term (planar system)");
    }

    psiham::PsiSpec make_psi() const {
        if (psi == "identity") return psiham::PsiSpec::identity();
        if (psi == "log") return psiham::PsiSpec::logarithm();
        throw psiham::ParameterError("unknown psi '" + psi + "' (identity | log)");
    }

    psiham::ProblemSpec make(double alpha) const {
        switch (psiham::app_from_name(app)) {
            case psiham::AppKind::TubePressure:
                return psiham::ProblemSpec::tube_pressure(alpha, make_psi(), a, nu, pressure);
            case psiham::AppKind::Tube:
                return psiham::ProblemSpec::tube(alpha, make_psi(), a, nu);
            case psiham::AppKind::PlanarSystem:
                return psiham::ProblemSpec::planar(alpha, make_psi(), a, rho0, g);
        }
        throw psiham::ParameterError("unreachable");
    }
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw psiham::ParameterError("cannot open output file '" + path + "'");
    out << content;
}

// --- solve -------------------------------------------------------------------

struct SolveConfig {
    ProblemFlags problem;
    double alpha = 0.5;
    double hbar = -1.0;
    std::optional<double> hbar2;
    int orders = 3;
    bool resum = false;
    int resum_terms = -1;
    std::string output;
};

int run_solve(const SolveConfig& cfg) {
    const psiham::ProblemSpec problem = cfg.problem.make(cfg.alpha);
    psiham::HamSeries series = [&] {
        if (cfg.resum)
            return psiham::resum_geometric(problem, cfg.hbar,
                                           cfg.hbar2.value_or(cfg.hbar), cfg.resum_terms);
        psiham::HamConfig hc;
        hc.hbar = cfg.hbar;
        if (cfg.hbar2) {
            hc.hbar2 = *cfg.hbar2;
            hc.use_hbar2 = true;
        }
        hc.orders = cfg.orders;
        return psiham::ham_series(problem, hc);
    }();

    nlohmann::json doc{{"problem", psiham::to_json(problem)},
                       {"series", psiham::to_json(series)}};
    write_output(cfg.output, doc.dump(2) + "\n");
    return 0;
}

// --- eval --------------------------------------------------------------------

struct EvalConfig {
    ProblemFlags problem;
    std::string alphas = "1";
    std::string r_range, x_range, y_range, t_range;
    int tube_terms = 4;
    std::string series_path;
    std::string output;
};

int run_eval(const EvalConfig& cfg) {
    const bool from_series = !cfg.series_path.empty();
    nlohmann::json series_doc;
    std::optional<psiham::HamSeries> series;
    std::optional<psiham::ProblemSpec> series_problem;
    if (from_series) {
        std::ifstream in(cfg.series_path);
        if (!in) throw psiham::ParameterError("cannot open series file '" + cfg.series_path + "'");
        in >> series_doc;
        series = psiham::ham_series_from_json(series_doc.at("series"));
        series_problem = psiham::problem_from_json(series_doc.at("problem"));
    }

    const psiham::AppKind app = from_series
                                    ? series_problem->app()
                                    : psiham::app_from_name(cfg.problem.app);
    const bool planar = app == psiham::AppKind::PlanarSystem;

    const std::vector<std::string> alpha_tokens =
        from_series ? std::vector<std::string>{"series"} : split_list(cfg.alphas);

    // Build problems per alpha (exact-solution path).
    std::vector<psiham::ProblemSpec> problems;
    if (!from_series) {
        problems.reserve(alpha_tokens.size());
        for (const auto& tok : alpha_tokens) problems.push_back(cfg.problem.make(std::stod(tok)));
    }

    const Range r_range = Range::parse(cfg.r_range.empty() ? "0.5" : cfg.r_range);
    const Range x_range = Range::parse(cfg.x_range.empty() ? "0" : cfg.x_range);
    const Range y_range = Range::parse(cfg.y_range.empty() ? "0" : cfg.y_range);
    const Range t_range = Range::parse(cfg.t_range.empty() ? "1" : cfg.t_range);

    std::ostringstream csv;
    std::ostringstream warnings;

    // Header: variable grid columns in fixed order, then per-alpha values.
    std::vector<std::string> header;
    const bool var_s1 = (planar ? x_range.count : r_range.count) > 1;
    const bool var_y = planar && y_range.count > 1;
    const bool var_t = t_range.count > 1;
    if (var_s1) header.push_back(planar ? "x" : "r");
    if (var_y) header.push_back("y");
    if (var_t) header.push_back("t");
    for (const auto& tok : alpha_tokens) {
        if (planar) {
            header.push_back("u[alpha=" + tok + "]");
            header.push_back("v[alpha=" + tok + "]");
        } else {
            header.push_back("u[alpha=" + tok + "]");
        }
    }
    for (std::size_t i = 0; i < header.size(); ++i)
        csv << (i ? "," : "") << header[i];
    csv << "\n";

    const auto s1_values = planar ? x_range.values() : r_range.values();
    const auto y_values = y_range.values();
    const auto t_values = t_range.values();

    auto emit_value = [&](std::ostringstream& row, double value, bool lead_comma) {
        if (lead_comma) row << ",";
        row << fmt12(value);
    };

    for (const double s1 : s1_values) {
        for (const double y : (planar ? y_values : std::vector<double>{0.0})) {
            for (const double t : t_values) {
                std::ostringstream row;
                bool first = true;
                auto emit_grid = [&](double v) {
                    if (!first) row << ",";
                    row << fmt12(v);
                    first = false;
                };
                if (var_s1) emit_grid(s1);
                if (var_y) emit_grid(y);
                if (var_t) emit_grid(t);
                for (std::size_t ai = 0; ai < alpha_tokens.size(); ++ai) {
                    try {
                        if (planar) {
                            const auto [u, v] =
                                from_series
                                    ? psiham::series_eval(
                                          std::get<psiham::PlanarCoupledSeries>(*series),
                                          series_problem->psi(), series_problem->a(), s1, y, t)
                                    : psiham::exact_solution(problems[ai], s1, y, t);
                            emit_value(row, u, !first);
                            first = false;
                            emit_value(row, v, true);
                        } else {
                            const double u =
                                from_series
                                    ? psiham::series_eval(
                                          std::get<psiham::CylindricalSeries>(*series),
                                          series_problem->psi(), series_problem->a(), s1, t)
                                    : psiham::exact_solution(problems[ai], s1, t,
                                                             cfg.tube_terms);
                            emit_value(row, u, !first);
                            first = false;
                        }
                    } catch (const psiham::SingularPointError&) {
                        row << (first ? "" : ",");
                        if (planar) row << ",";  // two empty cells
                        first = false;
                        warnings << "warning: singular point at "
                                 << (planar ? "x" : "r") << " = " << fmt12(s1)
                                 << ", t = " << fmt12(t) << "; cell left empty\n";
                    }
                }
                csv << row.str() << "\n";
            }
        }
    }

    std::cerr << warnings.str();
    write_output(cfg.output, csv.str());
    return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyConfig {
    ProblemFlags problem;
    double alpha = 0.5;
    std::string r_range = "0.1:1:20";
    std::string x_range = "0:6.283:10";
    std::string y_range = "0.2";
    std::string t_range;  // default: (a+0.1) : (a+4) : 20
    int nodes = 0;        // 0 -> from tolerance set
    int tube_terms = 4;
    std::string series_path;
    std::string output;
};

int run_verify(const VerifyConfig& cfg) {
    const psiham::ProblemSpec problem = cfg.problem.make(cfg.alpha);

    psiham::ToleranceSet tolerances = psiham::ToleranceSet::defaults();
    if (const char* env = std::getenv("PSI_HAM_TOLERANCES"))
        tolerances = psiham::ToleranceSet::load(env);

    psiham::QuadratureParams quad;
    quad.nodes = cfg.nodes > 0 ? cfg.nodes : tolerances.nodes;

    const double a = problem.a();
    const std::string t_token = cfg.t_range.empty()
                                    ? fmt12(a + 0.1) + ":" + fmt12(a + 4.0) + ":20"
                                    : cfg.t_range;
    const Range t_range = Range::parse(t_token);
    if (!(t_range.lo > a))
        throw psiham::ParameterError("verify: time grid must start after a");

    std::optional<psiham::HamSeries> series;
    if (!cfg.series_path.empty()) {
        std::ifstream in(cfg.series_path);
        if (!in) throw psiham::ParameterError("cannot open series file '" + cfg.series_path + "'");
        nlohmann::json doc;
        in >> doc;
        series = psiham::ham_series_from_json(doc.at("series"));
    }

    psiham::ResidualReport report;
    if (problem.is_cylindrical()) {
        const Range r = Range::parse(cfg.r_range);
        const auto grid = psiham::GridSpec::cylindrical(r.lo, r.hi, r.count, a,
                                                        t_range.lo - a, t_range.hi,
                                                        t_range.count);
        const auto candidate =
            series ? psiham::candidate_from_series(
                         std::get<psiham::CylindricalSeries>(*series), problem)
                   : psiham::candidate_from_exact(problem, cfg.tube_terms);
        report = psiham::residual_norm(problem, candidate, grid, quad);
    } else {
        const Range x = Range::parse(cfg.x_range);
        const Range y = Range::parse(cfg.y_range);
        const auto grid =
            psiham::GridSpec::planar(x.lo, x.hi, x.count, y.lo, y.hi, y.count, a,
                                     t_range.lo - a, t_range.hi, t_range.count);
        const auto candidate =
            series ? psiham::candidate_from_series(
                         std::get<psiham::PlanarCoupledSeries>(*series), problem)
                   : psiham::candidate_from_exact_planar(problem);
        report = psiham::residual_norm(problem, candidate, grid, quad);
    }

    const double budget = tolerances.budget_for(problem);
    nlohmann::json doc = report.to_json();
    doc["budget"] = budget;
    doc["pass"] = report.sup() <= budget;
    if (!cfg.output.empty()) write_output(cfg.output, doc.dump(2) + "\n");

    std::cout << report.to_text();
    std::cout << "budget: " << fmt12(budget) << " -> "
              << (report.sup() <= budget ? "PASS" : "FAIL") << "\n";
    return report.sup() <= budget ? 0 : kExitBudget;
}

// --- ml ----------------------------------------------------------------------

struct MlConfig {
    double alpha = 1.0;
    double z = 0.0;
    double tol = 1e-12;
    int max_terms = 1000;
};

int run_ml(const MlConfig& cfg) {
    const psiham::MlResult res =
        psiham::ml_eval(psiham::MlQuery{cfg.alpha, cfg.z, cfg.tol, cfg.max_terms});
    std::cout << fmt12(res.value) << " terms=" << res.terms_used << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psi-Caputo fractional flow problems: series solver, evaluator, verifier"};
    app.require_subcommand(1);

    SolveConfig solve_cfg;
    auto* solve = app.add_subcommand("solve", "run the order recursion or its resummation");
    solve_cfg.problem.attach(solve);
    solve->add_option("--alpha", solve_cfg.alpha, "fractional order in (0, 1]");
    solve->add_option("--hbar", solve_cfg.hbar, "auxiliary parameter");
    double hbar2_storage = 0.0;
    auto* hbar2_opt = solve->add_option("--hbar2", hbar2_storage,
                                        "second auxiliary parameter (planar system)");
    solve->add_option("--orders", solve_cfg.orders, "number of series orders M");
    solve->add_flag("--resum", solve_cfg.resum, "collapse the geometric families");
    solve->add_option("--terms", solve_cfg.resum_terms,
                      "families kept by --resum (-1: per-application default)");
    solve->add_option("-o,--output", solve_cfg.output, "output JSON path (default stdout)");

    EvalConfig eval_cfg;
    auto* eval = app.add_subcommand("eval", "tabulate solutions on a grid as CSV");
    eval_cfg.problem.attach(eval);
    eval->add_option("--alphas", eval_cfg.alphas, "comma-separated fractional orders");
    eval->add_option("--r", eval_cfg.r_range, "radial grid lo:hi:count or value");
    eval->add_option("--x", eval_cfg.x_range, "x grid lo:hi:count or value");
    eval->add_option("--y", eval_cfg.y_range, "y grid lo:hi:count or value");
    eval->add_option("--t", eval_cfg.t_range, "time grid lo:hi:count or value");
    eval->add_option("--terms", eval_cfg.tube_terms, "series terms for the tube solution");
    eval->add_option("--series", eval_cfg.series_path,
                     "evaluate a solve output document instead of the closed form");
    eval->add_option("-o,--output", eval_cfg.output, "output CSV path (default stdout)");

    VerifyConfig verify_cfg;
    auto* verify = app.add_subcommand("verify", "residual check against the governing equation");
    verify_cfg.problem.attach(verify);
    verify->add_option("--alpha", verify_cfg.alpha, "fractional order in (0, 1]");
    verify->add_option("--r", verify_cfg.r_range, "radial grid lo:hi:count");
    verify->add_option("--x", verify_cfg.x_range, "x grid lo:hi:count");
    verify->add_option("--y", verify_cfg.y_range, "y grid lo:hi:count or value");
    verify->add_option("--t", verify_cfg.t_range, "time grid lo:hi:count (must start after a)");
    verify->add_option("--nodes", verify_cfg.nodes, "quadrature cells (0: tolerance-file value)");
    verify->add_option("--terms", verify_cfg.tube_terms, "series terms for the tube solution");
    verify->add_option("--series", verify_cfg.series_path, "verify a solve output document");
    verify->add_option("-o,--output", verify_cfg.output, "JSON report path");

    MlConfig ml_cfg;
    auto* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function");
    ml->add_option("--alpha", ml_cfg.alpha, "parameter alpha > 0")->required();
    ml->add_option("--z", ml_cfg.z, "argument, |z| <= 30")->required();
    ml->add_option("--tol", ml_cfg.tol, "relative truncation tolerance");
    ml->add_option("--max-terms", ml_cfg.max_terms, "term budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            if (hbar2_opt->count() > 0) solve_cfg.hbar2 = hbar2_storage;
            return run_solve(solve_cfg);
        }
        if (eval->parsed()) return run_eval(eval_cfg);
        if (verify->parsed()) return run_verify(verify_cfg);
        if (ml->parsed()) return run_ml(ml_cfg);
    } catch (const psiham::ConvergenceRegionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegion;
    } catch (const psiham::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
