#include "psiham/verify.hpp"

#include "psiham/fractional.hpp"
#include "psiham/ham.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace psiham {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return out;
}

}  // namespace

GridSpec GridSpec::cylindrical(double r_lo, double r_hi, int n_r, double a, double eps,
                               double t_hi, int n_t) {
    if (!(r_lo > 0.0)) throw ParameterError("GridSpec: cylindrical grids require r_lo > 0");
    if (!(r_hi >= r_lo)) throw ParameterError("GridSpec: r_hi < r_lo");
    if (n_r < 2 || n_t < 2) throw ParameterError("GridSpec: point counts must be >= 2");
    if (!(eps > 0.0)) throw ParameterError("GridSpec: eps must be positive");
    if (!(t_hi > a + eps)) throw ParameterError("GridSpec: requires T > a + eps");
    GridSpec g;
    g.spatial1 = linspace(r_lo, r_hi, n_r);
    g.times = linspace(a + eps, t_hi, n_t);
    return g;
}

GridSpec GridSpec::planar(double x_lo, double x_hi, int n_x, double y_lo, double y_hi,
                          int n_y, double a, double eps, double t_hi, int n_t) {
    if (n_x < 2 || n_t < 2) throw ParameterError("GridSpec: point counts must be >= 2");
    if (n_y < 1) throw ParameterError("GridSpec: n_y must be >= 1");
    if (!(eps > 0.0)) throw ParameterError("GridSpec: eps must be positive");
    if (!(t_hi > a + eps)) throw ParameterError("GridSpec: requires T > a + eps");
    GridSpec g;
    g.spatial1 = linspace(x_lo, x_hi, n_x);
    g.spatial2 = linspace(y_lo, y_hi, n_y);
    g.times = linspace(a + eps, t_hi, n_t);
    return g;
}

double ResidualReport::sup() const {
    double worst = 0.0;
    for (const auto& eq : equations) worst = std::max(worst, eq.sup);
    return worst;
}

nlohmann::json ResidualReport::to_json() const {
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& eq : equations)
        eqs.push_back({{"label", eq.label},
                       {"sup", eq.sup},
                       {"rms", eq.rms},
                       {"worst", {{"s1", eq.worst_s1}, {"s2", eq.worst_s2}, {"t", eq.worst_t}}}});
    return {{"equations", eqs},
            {"quadrature", {{"nodes", quad.nodes}, {"step_scale", quad.step_scale}}},
            {"initial_condition", {{"max_dev", ic_max_dev}, {"mismatch", ic_mismatch}}}};
}

std::string ResidualReport::to_text() const {
    std::ostringstream os;
    for (const auto& eq : equations) {
        os << eq.label << ": sup = " << eq.sup << ", rms = " << eq.rms << " (worst at s1 = "
           << eq.worst_s1;
        if (eq.worst_s2 != 0.0) os << ", s2 = " << eq.worst_s2;
        os << ", t = " << eq.worst_t << ")\n";
    }
    os << "quadrature: nodes = " << quad.nodes << ", step_scale = " << quad.step_scale << "\n";
    os << "initial condition: max deviation = " << ic_max_dev
       << (ic_mismatch ? " (MISMATCH)" : " (ok)") << "\n";
    return os.str();
}

Candidate1D candidate_from_exact(const ProblemSpec& problem, int tube_terms) {
    Candidate1D c;
    c.value = [problem, tube_terms](double r, double t) {
        return exact_solution(problem, r, t, tube_terms);
    };
    if (problem.app() == AppKind::TubePressure) {
        // u = 1 - r^2 + c(t): radial operator is the constant -4.
        c.radial_operator = [](double, double) { return -4.0; };
    } else {
        const ProblemSpec p = problem;
        c.radial_operator = [p, tube_terms](double r, double t) {
            // term k: coeff r^{1-2k} -> coeff (1-2k)^2 r^{-1-2k}; r itself -> 1/r
            const double diff = p.psi().value(t) - p.psi().value(p.a());
            double total = 1.0 / r;
            double nu_pow = 1.0;
            for (int k = 1; k <= tube_terms; ++k) {
                nu_pow *= p.nu();
                const double n = 1.0 - 2.0 * k;
                total += tube_series_coefficient(k) * nu_pow * n * n *
                         std::pow(r, -1.0 - 2.0 * k) *
                         std::pow(diff, k * p.alpha()) / gamma_eval(k * p.alpha() + 1.0);
            }
            return total;
        };
    }
    return c;
}

Candidate1D candidate_from_series(const CylindricalSeries& series, const ProblemSpec& problem) {
    const PsiSpec psi = problem.psi();
    const double a = problem.a();
    CylindricalSeries applied;
    applied.alpha = series.alpha;
    for (const auto& order : series.orders)
        applied.orders.push_back(
            order.transformed([](const CylindricalExpr& e) { return cylindrical_operator(e); }));
    Candidate1D c;
    c.value = [series, psi, a](double r, double t) { return series_eval(series, psi, a, r, t); };
    c.radial_operator = [applied, psi, a](double r, double t) {
        return series_eval(applied, psi, a, r, t);
    };
    return c;
}

Candidate1D candidate_black_box(std::function<double(double, double)> value, double r_step) {
    Candidate1D c;
    c.value = value;
    c.radial_operator = [value, r_step](double r, double t) {
        const double h = std::min(r_step, 0.25 * r);
        const double um = value(r - h, t), u0 = value(r, t), up = value(r + h, t);
        const double urr = (up - 2.0 * u0 + um) / (h * h);
        const double ur = (up - um) / (2.0 * h);
        return urr + ur / r;
    };
    return c;
}

Candidate2D candidate_from_exact_planar(const ProblemSpec& problem) {
    const ProblemSpec p = problem;
    Candidate2D c;
    c.u = [p](double x, double y, double t) { return exact_solution(p, x, y, t).first; };
    c.v = [p](double x, double y, double t) { return exact_solution(p, x, y, t).second; };
    auto envelope = [p](double t) {
        const double diff = p.psi().value(t) - p.psi().value(p.a());
        return mittag_leffler(p.alpha(), -2.0 * p.rho0() * std::pow(diff, p.alpha()));
    };
    // Lap(-sin E) = +2 sin E; the forcing part is spatially constant.
    c.lap_u = [envelope](double x, double y, double t) {
        return 2.0 * std::sin(x + y) * envelope(t);
    };
    c.lap_v = [envelope](double x, double y, double t) {
        return -2.0 * std::sin(x + y) * envelope(t);
    };
    // u + v = 0 identically, so both convection sums vanish.
    c.conv_u = [](double, double, double) { return 0.0; };
    c.conv_v = [](double, double, double) { return 0.0; };
    return c;
}

Candidate2D candidate_from_series(const PlanarCoupledSeries& series, const ProblemSpec& problem) {
    const PsiSpec psi = problem.psi();
    const double a = problem.a();
    const double alpha = series.alpha;

    auto lap_of = [](const std::vector<TermSum<PlanarExpr>>& orders) {
        std::vector<TermSum<PlanarExpr>> out;
        out.reserve(orders.size());
        for (const auto& o : orders)
            out.push_back(o.transformed([](const PlanarExpr& e) { return planar_laplacian(e); }));
        return out;
    };
    auto grad_of = [](const std::vector<TermSum<PlanarExpr>>& orders) {
        std::vector<TermSum<PlanarExpr>> out;
        out.reserve(orders.size());
        for (const auto& o : orders)
            out.push_back(o.transformed([](const PlanarExpr& e) { return e.theta_derivative(); }));
        return out;
    };
    auto total_eval = [psi, a, alpha](const std::vector<TermSum<PlanarExpr>>& orders, double x,
                                      double y, double t) {
        const double diff = psi.value(t) - psi.value(a);
        const double theta = x + y;
        double sum = 0.0;
        for (const auto& o : orders)
            sum += o.eval([theta](const PlanarExpr& e) { return e.eval(theta); }, alpha, diff);
        return sum;
    };

    const auto lap_u = lap_of(series.u_orders);
    const auto lap_v = lap_of(series.v_orders);
    const auto grad_u = grad_of(series.u_orders);
    const auto grad_v = grad_of(series.v_orders);

    Candidate2D c;
    c.u = [series, psi, a](double x, double y, double t) {
        return series_eval(series, psi, a, x, y, t).first;
    };
    c.v = [series, psi, a](double x, double y, double t) {
        return series_eval(series, psi, a, x, y, t).second;
    };
    c.lap_u = [lap_u, total_eval](double x, double y, double t) {
        return total_eval(lap_u, x, y, t);
    };
    c.lap_v = [lap_v, total_eval](double x, double y, double t) {
        return total_eval(lap_v, x, y, t);
    };
    // Pointwise products: (u + v) * d/dtheta w evaluated numerically.
    auto series_u = series.u_orders;
    auto series_v = series.v_orders;
    c.conv_u = [series_u, series_v, grad_u, total_eval](double x, double y, double t) {
        const double carrier =
            total_eval(series_u, x, y, t) + total_eval(series_v, x, y, t);
        return carrier * total_eval(grad_u, x, y, t);
    };
    c.conv_v = [series_u, series_v, grad_v, total_eval](double x, double y, double t) {
        const double carrier =
            total_eval(series_u, x, y, t) + total_eval(series_v, x, y, t);
        return carrier * total_eval(grad_v, x, y, t);
    };
    return c;
}

namespace {

struct Accumulator {
    double sup = 0.0, sq = 0.0;
    long count = 0;
    double w1 = 0.0, w2 = 0.0, wt = 0.0;

    void feed(double value, double s1, double s2, double t) {
        const double mag = std::fabs(value);
        if (mag > sup) {
            sup = mag;
            w1 = s1;
            w2 = s2;
            wt = t;
        }
        sq += value * value;
        ++count;
    }

    EquationResidual finish(std::string label) const {
        EquationResidual eq;
        eq.label = std::move(label);
        eq.sup = sup;
        eq.rms = count > 0 ? std::sqrt(sq / count) : 0.0;
        eq.worst_s1 = w1;
        eq.worst_s2 = w2;
        eq.worst_t = wt;
        return eq;
    }
};

}  // namespace

ResidualReport residual_norm(const ProblemSpec& problem, const Candidate1D& candidate,
                             const GridSpec& grid, const QuadratureParams& quad) {
    if (!problem.is_cylindrical())
        throw VariantError("residual_norm: planar problem with scalar candidate");
    const FracOrder alpha(problem.alpha());
    const double a = problem.a();

    ResidualReport report;
    report.quad = quad;
    Accumulator acc;
    for (const double r : grid.spatial1) {
        auto f = [&](double tau) { return candidate.value(r, tau); };
        for (const double t : grid.times) {
            const double step =
                std::min(quad.step_scale * std::max(1.0, t - a), 0.25 * (t - a));
            const double dnum = caputo_derivative_numeric(alpha, f, problem.psi(), a, t, step,
                                                          quad.nodes);
            const double rhs = problem.pressure() + problem.nu() * candidate.radial_operator(r, t);
            acc.feed(dnum - rhs, r, 0.0, t);
        }
    }
    report.equations.push_back(acc.finish("momentum"));

    // Initial-condition deviation, reported separately from the residual.
    const CylindricalExpr init = problem.initial_cylindrical();
    for (const double r : grid.spatial1)
        report.ic_max_dev =
            std::max(report.ic_max_dev, std::fabs(candidate.value(r, a) - init.eval(r)));
    report.ic_mismatch = report.ic_max_dev > 1e-12;
    return report;
}

ResidualReport residual_norm(const ProblemSpec& problem, const Candidate2D& candidate,
                             const GridSpec& grid, const QuadratureParams& quad) {
    if (problem.is_cylindrical())
        throw VariantError("residual_norm: cylindrical problem with planar candidate");
    const FracOrder alpha(problem.alpha());
    const double a = problem.a();
    const std::vector<double> ys = grid.spatial2.empty() ? std::vector<double>{0.0}
                                                         : grid.spatial2;

    ResidualReport report;
    report.quad = quad;
    Accumulator acc_u, acc_v;
    for (const double x : grid.spatial1) {
        for (const double y : ys) {
            auto fu = [&](double tau) { return candidate.u(x, y, tau); };
            auto fv = [&](double tau) { return candidate.v(x, y, tau); };
            for (const double t : grid.times) {
                const double step =
                std::min(quad.step_scale * std::max(1.0, t - a), 0.25 * (t - a));
                const double du = caputo_derivative_numeric(alpha, fu, problem.psi(), a, t,
                                                            step, quad.nodes);
                const double dv = caputo_derivative_numeric(alpha, fv, problem.psi(), a, t,
                                                            step, quad.nodes);
                const double ru = du + candidate.conv_u(x, y, t) -
                                  problem.rho0() * candidate.lap_u(x, y, t) - problem.g();
                const double rv = dv + candidate.conv_v(x, y, t) -
                                  problem.rho0() * candidate.lap_v(x, y, t) + problem.g();
                acc_u.feed(ru, x, y, t);
                acc_v.feed(rv, x, y, t);
            }
        }
    }
    report.equations.push_back(acc_u.finish("momentum-u"));
    report.equations.push_back(acc_v.finish("momentum-v"));

    const auto [u0, v0] = problem.initial_planar();
    for (const double x : grid.spatial1) {
        for (const double y : ys) {
            report.ic_max_dev = std::max(
                report.ic_max_dev, std::fabs(candidate.u(x, y, a) - u0.eval(x + y)));
            report.ic_max_dev = std::max(
                report.ic_max_dev, std::fabs(candidate.v(x, y, a) - v0.eval(x + y)));
        }
    }
    report.ic_mismatch = report.ic_max_dev > 1e-12;
    return report;
}

// --- reference order tables -------------------------------------------------

std::vector<TermSum<CylindricalExpr>> reference_orders_cylindrical(const ProblemSpec& problem,
                                                                   double hbar) {
    const double h = hbar;
    const double hp = 1.0 + hbar;
    std::vector<TermSum<CylindricalExpr>> orders;

    auto cyl_term = [](TermSum<CylindricalExpr>& sum, int k, int n, double c) {
        sum.add(TempExponent{k, 0}, CylindricalExpr::monomial(n, c));
    };

    if (problem.app() == AppKind::TubePressure) {
        const double q = problem.pressure() - 4.0 * problem.nu();
        TermSum<CylindricalExpr> u0;
        u0.add(TempExponent{0, 0}, problem.initial_cylindrical());
        TermSum<CylindricalExpr> u1, u2, u3;
        cyl_term(u1, 1, 0, -h * q);
        cyl_term(u2, 1, 0, -hp * h * q);
        cyl_term(u3, 1, 0, -hp * hp * h * q);
        return {u0, u1, u2, u3};
    }
    if (problem.app() == AppKind::Tube) {
        const double nu = problem.nu();
        TermSum<CylindricalExpr> u0, u1, u2, u3, u4;
        u0.add(TempExponent{0, 0}, problem.initial_cylindrical());
        cyl_term(u1, 1, -1, -h * nu);
        cyl_term(u2, 1, -1, -hp * h * nu);
        cyl_term(u2, 2, -3, h * h * nu * nu);
        cyl_term(u3, 1, -1, -hp * hp * h * nu);
        cyl_term(u3, 2, -3, 2.0 * hp * h * h * nu * nu);
        cyl_term(u3, 3, -5, -9.0 * h * h * h * nu * nu * nu);
        cyl_term(u4, 1, -1, -hp * hp * hp * h * nu);
        cyl_term(u4, 2, -3, 3.0 * hp * hp * h * h * nu * nu);
        cyl_term(u4, 3, -5, -27.0 * hp * h * h * h * nu * nu * nu);
        cyl_term(u4, 4, -7, 225.0 * h * h * h * h * nu * nu * nu * nu);
        return {u0, u1, u2, u3, u4};
    }
    throw VariantError("reference_orders_cylindrical: planar problem");
}

std::pair<std::vector<TermSum<PlanarExpr>>, std::vector<TermSum<PlanarExpr>>>
reference_orders_planar(const ProblemSpec& problem, double hbar) {
    if (problem.app() != AppKind::PlanarSystem)
        throw VariantError("reference_orders_planar: cylindrical problem");
    const double h = hbar;
    const double hp = 1.0 + hbar;
    const double rho = problem.rho0();
    const double g = problem.g();

    auto planar_term = [](TermSum<PlanarExpr>& sum, int k, double sin_c, double const_c) {
        PlanarExpr e;
        e.add_sine(1, sin_c);
        e.add_constant(const_c);
        sum.add(TempExponent{k, 0}, e);
    };

    std::vector<TermSum<PlanarExpr>> u(4), v(4);
    u[0].add(TempExponent{0, 0}, PlanarExpr::sine(1, -1.0));
    v[0].add(TempExponent{0, 0}, PlanarExpr::sine(1, 1.0));

    planar_term(u[1], 1, -2.0 * h * rho, -h * g);
    planar_term(u[2], 1, -2.0 * hp * h * rho, -hp * h * g);
    planar_term(u[2], 2, -4.0 * h * h * rho * rho, 0.0);
    planar_term(u[3], 1, -2.0 * hp * hp * h * rho, -hp * hp * h * g);
    planar_term(u[3], 2, -8.0 * hp * h * h * rho * rho, 0.0);
    planar_term(u[3], 3, -8.0 * h * h * h * rho * rho * rho, 0.0);
    for (int m = 1; m <= 3; ++m) v[static_cast<std::size_t>(m)] =
        u[static_cast<std::size_t>(m)] * -1.0;
    return {u, v};
}

OracleCompareReport series_oracle_compare(const ProblemSpec& problem, int M, double hbar) {
    if (M < 1 || M > 8) throw DomainError("series_oracle_compare: M must lie in [1, 8]");
    HamConfig config;
    config.hbar = hbar;
    config.orders = M;

    OracleCompareReport report;
    auto check = [&](int m, double dev) {
        report.max_deviation = std::max(report.max_deviation, dev);
        ++report.orders_compared;
        if (dev > 1e-9)
            throw MismatchError("series_oracle_compare: order " + std::to_string(m) +
                                " deviates from the reference table by " + std::to_string(dev));
    };

    if (problem.is_cylindrical()) {
        const auto series = std::get<CylindricalSeries>(ham_series(problem, config));
        const auto table = reference_orders_cylindrical(problem, hbar);
        const int depth = std::min<int>(M, static_cast<int>(table.size()) - 1);
        for (int m = 1; m <= depth; ++m)
            check(m, max_coefficient_difference(series.orders[static_cast<std::size_t>(m)],
                                                table[static_cast<std::size_t>(m)]));
    } else {
        const auto series = std::get<PlanarCoupledSeries>(ham_series(problem, config));
        const auto [ut, vt] = reference_orders_planar(problem, hbar);
        const int depth = std::min<int>(M, static_cast<int>(ut.size()) - 1);
        for (int m = 1; m <= depth; ++m) {
            check(m, max_coefficient_difference(series.u_orders[static_cast<std::size_t>(m)],
                                                ut[static_cast<std::size_t>(m)]));
            check(m, max_coefficient_difference(series.v_orders[static_cast<std::size_t>(m)],
                                                vt[static_cast<std::size_t>(m)]));
        }
    }
    return report;
}

// --- initial-condition checks ------------------------------------------------

namespace {

std::vector<double> default_spatial_grid() {
    return linspace(0.1, 1.0, 10);
}

IcReport finish_ic(double max_dev) {
    return IcReport{max_dev <= 1e-14, max_dev};
}

}  // namespace

IcReport initial_condition_check(const HamSeries& series, const ProblemSpec& problem) {
    double max_dev = 0.0;
    if (problem.is_cylindrical()) {
        const auto& s = std::get<CylindricalSeries>(series);
        const CylindricalExpr init = problem.initial_cylindrical();
        for (const double r : default_spatial_grid())
            max_dev = std::max(max_dev,
                               std::fabs(series_eval(s, problem.psi(), problem.a(), r,
                                                     problem.a()) -
                                         init.eval(r)));
    } else {
        const auto& s = std::get<PlanarCoupledSeries>(series);
        const auto [u0, v0] = problem.initial_planar();
        for (const double x : linspace(0.0, 6.2, 10)) {
            const auto [u, v] =
                series_eval(s, problem.psi(), problem.a(), x, 0.2, problem.a());
            max_dev = std::max(max_dev, std::fabs(u - u0.eval(x + 0.2)));
            max_dev = std::max(max_dev, std::fabs(v - v0.eval(x + 0.2)));
        }
    }
    return finish_ic(max_dev);
}

IcReport initial_condition_check(const ProblemSpec& problem) {
    double max_dev = 0.0;
    if (problem.is_cylindrical()) {
        const CylindricalExpr init = problem.initial_cylindrical();
        for (const double r : default_spatial_grid())
            max_dev = std::max(max_dev, std::fabs(exact_solution(problem, r, problem.a()) -
                                                  init.eval(r)));
    } else {
        const auto [u0, v0] = problem.initial_planar();
        for (const double x : linspace(0.0, 6.2, 10)) {
            const auto [u, v] = exact_solution(problem, x, 0.2, problem.a());
            max_dev = std::max(max_dev, std::fabs(u - u0.eval(x + 0.2)));
            max_dev = std::max(max_dev, std::fabs(v - v0.eval(x + 0.2)));
        }
    }
    return finish_ic(max_dev);
}

ToleranceSet ToleranceSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("ToleranceSet: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParameterError(std::string("ToleranceSet: parse failure: ") + e.what());
    }
    ToleranceSet t;
    t.residual_sup = j.value("residual_sup", t.residual_sup);
    t.residual_sup_classical = j.value("residual_sup_classical", t.residual_sup_classical);
    t.nodes = j.value("nodes", t.nodes);
    if (!(t.residual_sup > 0.0) || !(t.residual_sup_classical > 0.0) || t.nodes < 2)
        throw ParameterError("ToleranceSet: invalid tolerance values");
    return t;
}

double ToleranceSet::budget_for(const ProblemSpec& problem) const {
    return problem.alpha() == 1.0 ? residual_sup_classical : residual_sup;
}

}  // namespace psiham
