#include "psiham/problems.hpp"

#include "psiham/special.hpp"

#include <cmath>

namespace psiham {

const char* app_name(AppKind app) {
    switch (app) {
        case AppKind::TubePressure: return "tube-pressure";
        case AppKind::Tube: return "tube";
        case AppKind::PlanarSystem: return "planar";
    }
    return "unknown";
}

AppKind app_from_name(const std::string& name) {
    if (name == "tube-pressure") return AppKind::TubePressure;
    if (name == "tube") return AppKind::Tube;
    if (name == "planar") return AppKind::PlanarSystem;
    throw ParameterError("unknown application '" + name + "'");
}

void ProblemSpec::check_time_origin(const PsiSpec& psi, double a) {
    if (psi.kind() == PsiKind::Logarithm && !(a > 0.0))
        throw DomainError("ProblemSpec: logarithmic psi requires a > 0");
    psi.require_domain(a);
}

ProblemSpec ProblemSpec::tube_pressure(double alpha, PsiSpec psi, double a, double nu,
                                       double pressure) {
    check_time_origin(psi, a);
    if (!(nu > 0.0)) throw ParameterError("ProblemSpec: nu must be positive");
    if (!std::isfinite(pressure)) throw ParameterError("ProblemSpec: P must be finite");
    ProblemSpec p(AppKind::TubePressure, FracOrder::solver_order(alpha), std::move(psi), a);
    p.nu_ = nu;
    p.pressure_ = pressure;
    return p;
}

ProblemSpec ProblemSpec::tube(double alpha, PsiSpec psi, double a, double nu) {
    check_time_origin(psi, a);
    if (!(nu > 0.0)) throw ParameterError("ProblemSpec: nu must be positive");
    ProblemSpec p(AppKind::Tube, FracOrder::solver_order(alpha), std::move(psi), a);
    p.nu_ = nu;
    p.pressure_ = 0.0;
    return p;
}

ProblemSpec ProblemSpec::planar(double alpha, PsiSpec psi, double a, double rho0, double g) {
    check_time_origin(psi, a);
    if (!(rho0 > 0.0)) throw ParameterError("ProblemSpec: rho0 must be positive");
    if (!std::isfinite(g)) throw ParameterError("ProblemSpec: g must be finite");
    ProblemSpec p(AppKind::PlanarSystem, FracOrder::solver_order(alpha), std::move(psi), a);
    p.rho0_ = rho0;
    p.g_ = g;
    return p;
}

double ProblemSpec::nu() const {
    if (!nu_) throw ParameterError("ProblemSpec: nu is not a parameter of this application");
    return *nu_;
}

double ProblemSpec::pressure() const {
    if (!pressure_)
        throw ParameterError("ProblemSpec: P is not a parameter of this application");
    return *pressure_;
}

double ProblemSpec::rho0() const {
    if (!rho0_) throw ParameterError("ProblemSpec: rho0 is not a parameter of this application");
    return *rho0_;
}

double ProblemSpec::g() const {
    if (!g_) throw ParameterError("ProblemSpec: g is not a parameter of this application");
    return *g_;
}

CylindricalExpr ProblemSpec::initial_cylindrical() const {
    switch (app_) {
        case AppKind::TubePressure: {
            CylindricalExpr e;
            e.add(0, 1.0);
            e.add(2, -1.0);
            return e;  // 1 - r^2
        }
        case AppKind::Tube:
            return CylindricalExpr::monomial(1, 1.0);  // r
        default:
            throw VariantError("initial_cylindrical: planar problem");
    }
}

std::pair<PlanarExpr, PlanarExpr> ProblemSpec::initial_planar() const {
    if (app_ != AppKind::PlanarSystem)
        throw VariantError("initial_planar: cylindrical problem");
    return {PlanarExpr::sine(1, -1.0), PlanarExpr::sine(1, 1.0)};
}

double tube_series_coefficient(int k) {
    if (k < 1) throw DomainError("tube_series_coefficient: k must be >= 1");
    double df = 1.0;  // (2k-3)!!, with (-1)!! = 1!! = 1
    for (int i = 3; i <= 2 * k - 3; i += 2) df *= i;
    return df * df;
}

namespace {

double psi_difference(const ProblemSpec& p, double t) {
    if (t < p.a()) throw DomainError("exact_solution: t < a");
    return p.psi().value(t) - p.psi().value(p.a());
}

double normalized_power(double diff, double beta) {
    if (beta == 0.0) return 1.0;
    return std::pow(diff, beta) / gamma_eval(beta + 1.0);
}

}  // namespace

double exact_solution(const ProblemSpec& problem, double r, double t, int tube_terms) {
    const double diff = psi_difference(problem, t);
    const double alpha = problem.alpha();
    switch (problem.app()) {
        case AppKind::TubePressure:
            return 1.0 - r * r +
                   (problem.pressure() - 4.0 * problem.nu()) * normalized_power(diff, alpha);
        case AppKind::Tube: {
            if (tube_terms < 1) throw DomainError("exact_solution: tube_terms must be >= 1");
            if (r == 0.0)
                throw SingularPointError("exact_solution: tube solution is singular at r = 0");
            double total = r;
            double nu_pow = 1.0;
            for (int k = 1; k <= tube_terms; ++k) {
                nu_pow *= problem.nu();
                total += tube_series_coefficient(k) * nu_pow * std::pow(r, 1 - 2 * k) *
                         normalized_power(diff, k * alpha);
            }
            return total;
        }
        default:
            throw VariantError("exact_solution: planar problem needs the (x, y) overload");
    }
}

std::pair<double, double> exact_solution(const ProblemSpec& problem, double x, double y,
                                         double t) {
    if (problem.app() != AppKind::PlanarSystem)
        throw VariantError("exact_solution: cylindrical problem needs the (r) overload");
    const double diff = psi_difference(problem, t);
    const double alpha = problem.alpha();
    const double z = -2.0 * problem.rho0() * std::pow(diff, alpha);
    const double envelope = mittag_leffler(alpha, z);
    const double trig = std::sin(x + y);
    const double forcing = problem.g() * normalized_power(diff, alpha);
    return {-trig * envelope + forcing, trig * envelope - forcing};
}

}  // namespace psiham
