#pragma once

#include "psiham/errors.hpp"
#include "psiham/psi.hpp"
#include "psiham/special.hpp"

#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <variant>
#include <vector>

namespace psiham {

/// Temporal exponent beta = k*alpha + j, stored exactly as the integer pair
/// (k, j) so that merging terms never compares floats. A term with
/// coefficient c and exponent beta denotes
///   c * (psi(t)-psi(a))^beta / Gamma(beta+1).
struct TempExponent {
    int k = 0;
    int j = 0;

    double beta(double alpha) const { return k * alpha + j; }
    bool is_zero() const { return k == 0 && j == 0; }
    auto operator<=>(const TempExponent&) const = default;
};

inline TempExponent operator+(TempExponent a, TempExponent b) {
    TempExponent sum{a.k + b.k, a.j + b.j};
    if (sum.j < 0 || sum.j > 1)
        throw OrderError("TempExponent: integer part outside {0,1} after addition");
    return sum;
}

/// Normalized time factor (psi(t)-psi(a))^beta / Gamma(beta+1).
double temporal_factor(TempExponent e, double alpha, double psi_diff);

/// Ratio appearing when two normalized time factors are multiplied:
///   T_{b1} * T_{b2} = ratio * T_{b1+b2},
///   ratio = Gamma(b1+b2+1) / (Gamma(b1+1) Gamma(b2+1)).
double temporal_product_ratio(TempExponent a, TempExponent b, double alpha);

// ---------------------------------------------------------------------------
// Spatial expressions
// ---------------------------------------------------------------------------

/// Laurent polynomial in r: finitely many terms c * r^n with integer n
/// (possibly negative). Zero coefficients are pruned.
class CylindricalExpr {
public:
    CylindricalExpr() = default;
    static CylindricalExpr constant(double c) { return monomial(0, c); }
    static CylindricalExpr monomial(int n, double c);

    CylindricalExpr& add(int n, double c);
    double coefficient(int n) const;
    const std::map<int, double>& monomials() const { return coef_; }
    bool empty() const { return coef_.empty(); }

    /// Throws SingularPointError at r = 0 when negative exponents are present.
    double eval(double r) const;

    CylindricalExpr operator*(double s) const;
    CylindricalExpr operator+(const CylindricalExpr& o) const;
    CylindricalExpr operator-() const { return *this * -1.0; }

private:
    std::map<int, double> coef_;
};

/// Trigonometric polynomial in theta = x + y: constant plus finitely many
/// sin(k theta), cos(k theta) harmonics with k >= 1.
class PlanarExpr {
public:
    PlanarExpr() = default;
    static PlanarExpr constant(double c);
    static PlanarExpr sine(int k, double c);
    static PlanarExpr cosine(int k, double c);

    PlanarExpr& add_constant(double c);
    PlanarExpr& add_sine(int k, double c);
    PlanarExpr& add_cosine(int k, double c);

    double constant_part() const { return c0_; }
    /// {sin coefficient, cos coefficient} of harmonic k (k >= 1).
    std::array<double, 2> harmonic(int k) const;
    const std::map<int, std::array<double, 2>>& harmonics() const { return harm_; }
    bool empty() const;

    double eval(double theta) const;

    /// d/dtheta: sin(k) -> k cos(k), cos(k) -> -k sin(k), constant -> 0.
    PlanarExpr theta_derivative() const;

    PlanarExpr operator*(double s) const;
    PlanarExpr operator+(const PlanarExpr& o) const;
    PlanarExpr operator-() const { return *this * -1.0; }

private:
    void prune(int k);
    double c0_ = 0.0;
    std::map<int, std::array<double, 2>> harm_;
};

using SpatialExpr = std::variant<CylindricalExpr, PlanarExpr>;

/// Radial operator u'' + u'/r on the Laurent basis: c r^n -> c n^2 r^{n-2};
/// constants map to zero.
CylindricalExpr cylindrical_operator(const CylindricalExpr& e);

/// Laplacian on the theta = x+y basis: sin/cos(k theta) -> -2k^2 sin/cos;
/// constants map to zero.
PlanarExpr planar_laplacian(const PlanarExpr& e);

/// Product with trig products expanded back into the basis
/// (product-to-sum identities).
PlanarExpr planar_product(const PlanarExpr& a, const PlanarExpr& b);

/// Convolution-style convection sum over orders 0..m-1:
///   sum_i (u_i + v_i) * d/dtheta w_{m-1-i}.
/// Lists must all have length m (LengthError otherwise).
PlanarExpr planar_convection(const std::vector<PlanarExpr>& us,
                             const std::vector<PlanarExpr>& vs,
                             const std::vector<PlanarExpr>& ws, int m);

// Variant wrappers enforcing the expression kind (VariantError on mismatch).
SpatialExpr cylindrical_operator(const SpatialExpr& e);
SpatialExpr planar_laplacian(const SpatialExpr& e);

// ---------------------------------------------------------------------------
// Term sums and series
// ---------------------------------------------------------------------------

/// One term: a spatial expression times a normalized time factor.
template <class S>
struct SeriesTerm {
    S spatial;
    TempExponent beta;
};

/// Fractional integral on the normalized power basis is a pure exponent
/// shift beta -> beta + alpha (the Gamma ratio is absorbed by the 1/Gamma
/// normalization); the spatial part is untouched.
template <class S>
SeriesTerm<S> temporal_fractional_integral(SeriesTerm<S> term) {
    ++term.beta.k;
    return term;
}

/// Sum of terms, normalized: one spatial expression per temporal exponent,
/// empty spatial parts pruned.
template <class S>
class TermSum {
public:
    TermSum() = default;

    void add(TempExponent e, const S& spatial) {
        if (spatial.empty()) return;
        auto it = parts_.find(e);
        if (it == parts_.end()) {
            parts_.emplace(e, spatial);
        } else {
            it->second = it->second + spatial;
            if (it->second.empty()) parts_.erase(it);
        }
    }

    const std::map<TempExponent, S>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    /// Value at t = a: only beta = 0 terms survive.
    S initial_value() const {
        auto it = parts_.find(TempExponent{0, 0});
        return it == parts_.end() ? S{} : it->second;
    }

    /// The sum minus its value at t = a (drops the beta = 0 slot exactly).
    TermSum without_initial_value() const {
        TermSum out = *this;
        out.parts_.erase(TempExponent{0, 0});
        return out;
    }

    /// Exponent shift beta -> beta + alpha on every term.
    TermSum fractional_integral() const {
        TermSum out;
        for (const auto& [e, s] : parts_) out.parts_.emplace(TempExponent{e.k + 1, e.j}, s);
        return out;
    }

    TermSum operator*(double c) const {
        TermSum out;
        if (c == 0.0) return out;
        for (const auto& [e, s] : parts_) out.add(e, s * c);
        return out;
    }

    TermSum operator+(const TermSum& o) const {
        TermSum out = *this;
        for (const auto& [e, s] : o.parts_) out.add(e, s);
        return out;
    }

    /// Applies a spatial transform (e.g. a differential operator) per term.
    template <class Fn>
    TermSum transformed(Fn&& fn) const {
        TermSum out;
        for (const auto& [e, s] : parts_) out.add(e, fn(s));
        return out;
    }

    /// Numeric value at one point: sum of spatial(point) * temporal factor.
    template <class PointEval>
    double eval(PointEval&& spatial_value, double alpha, double psi_diff) const {
        double total = 0.0;
        for (const auto& [e, s] : parts_)
            total += spatial_value(s) * temporal_factor(e, alpha, psi_diff);
        return total;
    }

private:
    std::map<TempExponent, S> parts_;
};

/// Product of two planar term sums; temporal factors multiply with the
/// Gamma-ratio correction, spatial parts by product-to-sum expansion.
TermSum<PlanarExpr> termsum_product(const TermSum<PlanarExpr>& a,
                                    const TermSum<PlanarExpr>& b, double alpha);

/// Largest absolute coefficient difference over the union of the two sums'
/// (exponent, basis element) slots.
double max_coefficient_difference(const TermSum<CylindricalExpr>& a,
                                  const TermSum<CylindricalExpr>& b);
double max_coefficient_difference(const TermSum<PlanarExpr>& a,
                                  const TermSum<PlanarExpr>& b);

/// Series of per-order term sums for the scalar (cylindrical) problems.
struct CylindricalSeries {
    double alpha = 1.0;
    std::vector<TermSum<CylindricalExpr>> orders;
};

/// Coupled pair of series for the planar system.
struct PlanarCoupledSeries {
    double alpha = 1.0;
    std::vector<TermSum<PlanarExpr>> u_orders;
    std::vector<TermSum<PlanarExpr>> v_orders;
};

using HamSeries = std::variant<CylindricalSeries, PlanarCoupledSeries>;

/// Truncated numeric evaluation, sum of orders 0..orders_used
/// (orders_used = -1 means all). Throws DomainError for t < a and
/// OrderError when orders_used exceeds the stored depth.
double series_eval(const CylindricalSeries& s, const PsiSpec& psi, double a, double r,
                   double t, int orders_used = -1);
std::pair<double, double> series_eval(const PlanarCoupledSeries& s, const PsiSpec& psi,
                                      double a, double x, double y, double t,
                                      int orders_used = -1);

}  // namespace psiham
