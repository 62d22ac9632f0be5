#pragma once

#include "psiham/errors.hpp"

namespace psiham {

/// Gamma function by the Lanczos approximation (g = 7, 9 coefficients),
/// with reflection for x < 0.5. Relative error is below 1e-12 on (0, 50]
/// and stays near machine precision up to the double overflow bound.
/// Throws PoleError at x in {0, -1, -2, ...}.
double gamma_eval(double x);

/// log|Gamma(x)|, same approximation. Used for overflow-safe term sizing.
double log_gamma_eval(double x);

struct MlQuery {
    double alpha;          // series parameter, > 0
    double z;              // argument, |z| <= 30
    double tol = 1e-12;    // relative truncation tolerance, in (0, 1e-3]
    int max_terms = 1000;  // hard budget, <= 1000
};

struct MlResult {
    double value;
    int terms_used;
    double error_estimate;  // first omitted term plus accumulated roundoff
};

/// One-parameter Mittag-Leffler function
///   E_alpha(z) = sum_{m>=0} z^m / Gamma(m*alpha + 1),
/// summed directly until the next term falls below tol * max(|sum|, 1).
/// Throws DomainError for |z| > 30 or invalid query fields, and
/// ConvergenceError when the budget is exhausted, a term overflows, or
/// alternating-series cancellation exceeds the 1e-2 absolute level (small
/// alpha with moderately large negative z).
MlResult ml_eval(const MlQuery& q);

/// Convenience wrapper returning just the value at default tolerance.
double mittag_leffler(double alpha, double z);

}  // namespace psiham
