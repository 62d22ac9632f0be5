#pragma once

#include "psiham/algebra.hpp"
#include "psiham/problems.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace psiham {

/// Evaluation grid for residual checks. Spatial points exclude the
/// singular axis (r > 0 enforced for cylindrical problems) and times
/// start strictly after a (the kernel endpoint).
struct GridSpec {
    std::vector<double> spatial1;  // r (cylindrical) or x (planar)
    std::vector<double> spatial2;  // y values for planar grids, empty otherwise
    std::vector<double> times;     // in (a, T]

    static GridSpec cylindrical(double r_lo, double r_hi, int n_r, double a, double eps,
                                double t_hi, int n_t);
    static GridSpec planar(double x_lo, double x_hi, int n_x, double y_lo, double y_hi,
                           int n_y, double a, double eps, double t_hi, int n_t);
};

struct QuadratureParams {
    int nodes = 2048;          // mesh cells for the fractional derivative
    double step_scale = 1e-4;  // central-difference step = step_scale * max(1, t-a)
};

struct EquationResidual {
    std::string label;
    double sup = 0.0;
    double rms = 0.0;
    double worst_s1 = 0.0, worst_s2 = 0.0, worst_t = 0.0;  // worst offender location
};

struct ResidualReport {
    std::vector<EquationResidual> equations;
    QuadratureParams quad;
    double ic_max_dev = 0.0;
    bool ic_mismatch = false;

    double sup() const;  // max over equations
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Candidate solution of a scalar tube problem. `value` feeds the temporal
/// quadrature; `radial_operator` supplies u_rr + u_r/r (analytic for
/// term-represented candidates, finite differences for black boxes).
struct Candidate1D {
    std::function<double(double r, double t)> value;
    std::function<double(double r, double t)> radial_operator;
};

/// Candidate pair for the planar system with its spatial pieces.
struct Candidate2D {
    std::function<double(double x, double y, double t)> u, v;
    std::function<double(double x, double y, double t)> lap_u, lap_v;
    std::function<double(double x, double y, double t)> conv_u, conv_v;
};

Candidate1D candidate_from_exact(const ProblemSpec& problem, int tube_terms = 4);
Candidate1D candidate_from_series(const CylindricalSeries& series, const ProblemSpec& problem);
/// Black box: the radial operator is estimated by central differences in r.
Candidate1D candidate_black_box(std::function<double(double, double)> value,
                                double r_step = 1e-4);

Candidate2D candidate_from_exact_planar(const ProblemSpec& problem);
Candidate2D candidate_from_series(const PlanarCoupledSeries& series,
                                  const ProblemSpec& problem);

/// Residual norms of a candidate in the governing equation(s):
/// the temporal derivative is computed numerically through the quadrature
/// kernel; spatial terms come from the candidate. Also reports the
/// initial-condition deviation at t = a separately (never folded into the
/// residual norms).
ResidualReport residual_norm(const ProblemSpec& problem, const Candidate1D& candidate,
                             const GridSpec& grid, const QuadratureParams& quad);
ResidualReport residual_norm(const ProblemSpec& problem, const Candidate2D& candidate,
                             const GridSpec& grid, const QuadratureParams& quad);

/// Comparison of engine output against the hard-coded order tables
/// (instantiated at the given auxiliary parameter, both equal for the
/// coupled system). Orders beyond the table depth are not compared.
struct OracleCompareReport {
    int orders_compared = 0;
    double max_deviation = 0.0;
};

/// Throws MismatchError when any compared order deviates beyond 1e-9;
/// expected deviations are at roundoff (<= 1e-12). Requires M <= 8.
OracleCompareReport series_oracle_compare(const ProblemSpec& problem, int M, double hbar);

/// Reference order tables used by series_oracle_compare (exposed for tests).
std::vector<TermSum<CylindricalExpr>> reference_orders_cylindrical(const ProblemSpec& problem,
                                                                   double hbar);
std::pair<std::vector<TermSum<PlanarExpr>>, std::vector<TermSum<PlanarExpr>>>
reference_orders_planar(const ProblemSpec& problem, double hbar);

struct IcReport {
    bool pass = false;
    double max_dev = 0.0;
};

/// Initial-condition check at t = a over a default spatial grid; exact
/// match required (beta > 0 terms vanish analytically).
IcReport initial_condition_check(const HamSeries& series, const ProblemSpec& problem);
IcReport initial_condition_check(const ProblemSpec& problem);  // exact solution

/// Residual budgets, overridable through a JSON tolerance file
/// (environment variable PSI_HAM_TOLERANCES in the CLI).
struct ToleranceSet {
    double residual_sup = 5e-3;            // fractional-path budget at default nodes
    double residual_sup_classical = 1e-6;  // alpha = 1 path
    int nodes = 2048;

    static ToleranceSet defaults() { return {}; }
    static ToleranceSet load(const std::string& path);  // ParameterError on bad file
    double budget_for(const ProblemSpec& problem) const;
};

}  // namespace psiham
