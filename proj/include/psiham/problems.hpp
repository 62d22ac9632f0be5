#pragma once

#include "psiham/algebra.hpp"
#include "psiham/psi.hpp"

#include <optional>
#include <utility>

namespace psiham {

enum class AppKind { TubePressure, Tube, PlanarSystem };

const char* app_name(AppKind app);
AppKind app_from_name(const std::string& name);  // ParameterError on unknown

/// One of the three concrete flow problems with its parameters and fixed
/// initial data:
///   TubePressure:  pressure-driven tube flow, u(r,a) = 1 - r^2
///   Tube:          tube flow without forcing, u(r,a) = r
///   PlanarSystem:  coupled planar system,     u = -sin(x+y), v = sin(x+y)
class ProblemSpec {
public:
    static ProblemSpec tube_pressure(double alpha, PsiSpec psi, double a, double nu,
                                     double pressure);
    static ProblemSpec tube(double alpha, PsiSpec psi, double a, double nu);
    static ProblemSpec planar(double alpha, PsiSpec psi, double a, double rho0, double g);

    AppKind app() const { return app_; }
    double alpha() const { return alpha_.value(); }
    const PsiSpec& psi() const { return psi_; }
    double a() const { return a_; }

    bool is_cylindrical() const { return app_ != AppKind::PlanarSystem; }

    // Parameter accessors throw ParameterError when the variant lacks them.
    double nu() const;
    double pressure() const;  // P (zero for the unforced tube problem)
    double rho0() const;
    double g() const;

    /// Initial guess for the scalar problems (1 - r^2 or r).
    CylindricalExpr initial_cylindrical() const;
    /// Initial guesses (u0, v0) for the coupled system.
    std::pair<PlanarExpr, PlanarExpr> initial_planar() const;

private:
    ProblemSpec(AppKind app, FracOrder alpha, PsiSpec psi, double a)
        : app_(app), alpha_(alpha), psi_(std::move(psi)), a_(a) {}
    static void check_time_origin(const PsiSpec& psi, double a);

    AppKind app_;
    FracOrder alpha_;
    PsiSpec psi_;
    double a_;
    std::optional<double> nu_, pressure_, rho0_, g_;
};

/// Squared odd double factorial [(2k-3)!!]^2 with (-1)!! = 1!! = 1, the
/// order-k coefficient of the tube-problem solution series (1, 1, 9, 225...).
double tube_series_coefficient(int k);

/// Closed-form exact solutions.
///   TubePressure: 1 - r^2 + (P - 4 nu) (psi(t)-psi(a))^alpha / Gamma(alpha+1)
///   Tube:         r + sum_{k=1}^{K} [(2k-3)!!]^2 nu^k r^{1-2k} T_{k alpha}
/// Throws SingularPointError at r = 0 for the Tube variant and DomainError
/// for t < a.
double exact_solution(const ProblemSpec& problem, double r, double t, int tube_terms = 4);

///   PlanarSystem: u = -sin(x+y) E_alpha(-2 rho0 (psi(t)-psi(a))^alpha) + g T_alpha,
///                 v = -u's trig part with flipped sign and -g T_alpha.
std::pair<double, double> exact_solution(const ProblemSpec& problem, double x, double y,
                                         double t);

}  // namespace psiham
