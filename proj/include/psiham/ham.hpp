#pragma once

#include "psiham/algebra.hpp"
#include "psiham/problems.hpp"

namespace psiham {

/// Gate constant of the order recursion: 0 for m <= 1, 1 for m > 1.
/// Switches the constant forcing terms off after the first order.
int chi(int m);

struct HamConfig {
    double hbar = -1.0;   // auxiliary parameter, nonzero
    double hbar2 = 0.0;   // second auxiliary parameter (coupled system);
                          // use_hbar2 = false means hbar2 := hbar
    bool use_hbar2 = false;
    int orders = 3;       // M >= 0; M = 0 keeps just the initial guess

    double second() const { return use_hbar2 ? hbar2 : hbar; }
    void validate() const;
};

/// One step of the order recursion for the scalar tube problems:
///   u_m = (chi_m + h) [u_{m-1} - u_{m-1}(a)]
///         - h I^alpha[ nu L u_{m-1} + P (1 - chi_m) ].
/// `previous` must hold orders 0..m-1 (OrderError otherwise).
TermSum<CylindricalExpr> ham_next_order(const ProblemSpec& problem,
                                        const CylindricalSeries& previous, int m,
                                        double hbar);

/// Coupled step for the planar system, including the convection sums
///   u_m = (chi_m + h1) [u_{m-1} - u_{m-1}(a)]
///         + h1 I^alpha[ sum_i (u_i + v_i) d/dtheta u_{m-1-i}
///                       - rho0 Lap u_{m-1} - g (1 - chi_m) ],
/// and the sign-flipped v recursion with h2 and +g.
std::pair<TermSum<PlanarExpr>, TermSum<PlanarExpr>> ham_next_order(
    const ProblemSpec& problem, const PlanarCoupledSeries& previous, int m, double hbar1,
    double hbar2);

/// Full series: orders 0..M from the problem's initial guess.
HamSeries ham_series(const ProblemSpec& problem, const HamConfig& config);

/// Collapses the geometric (1+h)-power families of the series into the
/// h-free closed form, valid for |1+h| < 1 (ConvergenceRegionError
/// otherwise). Family k's coefficients across orders follow
/// c_k (-h)^k C(m-1, k-1) (1+h)^{m-k}, so the total collapses to c_k by
/// sum_j C(j+k-1, k-1) (1+h)^j = (-h)^{-k}; the pure family contents c_k
/// are obtained from the recursion at the Adomian point (1+h) = 0 and the
/// collapse structure is verified against the caller's h at low orders.
///
/// `terms`: number of retained families; -1 picks the per-application
/// default (tube: 4, planar: 96, pressure-driven tube: exact after 1).
HamSeries resum_geometric(const ProblemSpec& problem, double hbar, int terms = -1);
HamSeries resum_geometric(const ProblemSpec& problem, double hbar1, double hbar2,
                          int terms);

}  // namespace psiham
