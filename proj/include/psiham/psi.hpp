#pragma once

#include "psiham/errors.hpp"

#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace psiham {

enum class PsiKind { Identity, Logarithm, Custom };

/// Monotone time-rescaling function psi together with its derivative and
/// inverse. Identity gives the classical operators, Logarithm the
/// Hadamard-type ones; Custom supplies all three maps explicitly (no
/// automatic differentiation).
class PsiSpec {
public:
    using Map = std::function<double(double)>;

    static PsiSpec identity();
    static PsiSpec logarithm();

    /// domain [lo, hi] restricts evaluation; pass infinities for none.
    static PsiSpec custom(Map value, Map derivative, Map inverse,
                          double domain_lo = -std::numeric_limits<double>::infinity(),
                          double domain_hi = std::numeric_limits<double>::infinity());

    PsiKind kind() const { return kind_; }
    const char* name() const;

    /// psi(t); throws DomainError outside the domain (Logarithm: t <= 0).
    double value(double t) const;
    /// psi'(t), strictly positive on the domain.
    double derivative(double t) const;
    /// psi^{-1}(s).
    double inverse(double s) const;

    /// Throws DomainError when t is outside the evaluable domain.
    void require_domain(double t) const;

private:
    PsiSpec(PsiKind kind, Map v, Map d, Map inv, double lo, double hi)
        : kind_(kind), value_(std::move(v)), derivative_(std::move(d)),
          inverse_(std::move(inv)), lo_(lo), hi_(hi) {}

    PsiKind kind_;
    Map value_, derivative_, inverse_;
    double lo_, hi_;
};

/// (psi(t), psi'(t)) in one call.
std::pair<double, double> psi_eval(const PsiSpec& psi, double t);

/// Fractional order. Kernel operations accept any alpha >= 0 (alpha = 0 is
/// the identity branch of the integral); the solver path is restricted to
/// (0, 1].
class FracOrder {
public:
    explicit FracOrder(double alpha);

    /// Constructor for the solver path: rejects alpha outside (0, 1].
    static FracOrder solver_order(double alpha);

    double value() const { return alpha_; }
    bool is_integer() const;
    /// n = floor(alpha) + 1 for non-integer alpha, n = alpha for integer.
    int n() const;

private:
    double alpha_;
};

}  // namespace psiham
