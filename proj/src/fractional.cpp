#include "psiham/fractional.hpp"

#include "psiham/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace psiham {

namespace {

// Moments of the kernel (A - xi)^{mu-1} over a cell [0, d], 0 < d <= A:
//   M0 = int_0^d (A-xi)^{mu-1} dxi
//   M1 = int_0^d (A-xi)^{mu-1} xi dxi
// The closed forms A^mu - B^mu cancel catastrophically when d << A, so far
// cells switch to the binomial series in d/A.
struct CellMoments {
    double m0;
    double m1;
};

CellMoments kernel_moments(double mu, double A, double d) {
    if (d >= 0.1 * A) {
        const double B = A - d;
        const double m0 = (std::pow(A, mu) - std::pow(B, mu)) / mu;
        const double m1 =
            A * m0 - (std::pow(A, mu + 1.0) - std::pow(B, mu + 1.0)) / (mu + 1.0);
        return {m0, m1};
    }
    // (A-xi)^{mu-1} = A^{mu-1} sum_k binom(mu-1, k) (-xi/A)^k
    const double r = d / A;
    double m0 = 0.0, m1 = 0.0;
    double c = 1.0;  // binom(mu-1, k) * (-1)^k
    double rk = 1.0;
    for (int k = 0; k < 64; ++k) {
        const double t0 = c * d * rk / (k + 1);
        const double t1 = c * d * d * rk / (k + 2);
        m0 += t0;
        m1 += t1;
        if (k > 2 && std::fabs(t0) < 1e-18 * std::fabs(m0)) break;
        c *= -(mu - 1.0 - k) / (k + 1);
        rk *= r;
    }
    const double scale = std::pow(A, mu - 1.0);
    return {scale * m0, scale * m1};
}

// Product integration of (S - s)^{mu-1} against the piecewise-linear
// interpolant of g on the mesh s[0..n]; result excludes the 1/Gamma(mu)
// prefactor.
double product_integrate(double mu, const std::vector<double>& s,
                         const std::vector<double>& g) {
    const double S = s.back();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double d = s[i + 1] - s[i];
        if (d <= 0.0) continue;
        const auto [m0, m1] = kernel_moments(mu, S - s[i], d);
        total += g[i] * (m0 - m1 / d) + g[i + 1] * (m1 / d);
    }
    return total;
}

std::vector<double> graded_mesh(double lo, double hi, int cells, double grading) {
    std::vector<double> s(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i)
        s[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * std::pow(static_cast<double>(i) / cells, grading);
    s.back() = hi;
    return s;
}

}  // namespace

double frac_integral_power(const FracOrder& alpha, double delta, const PsiSpec& psi,
                           double a, double t) {
    if (!(delta > 0.0)) throw DomainError("frac_integral_power: delta must be positive");
    if (t < a) throw DomainError("frac_integral_power: t < a");
    const double diff = psi.value(t) - psi.value(a);
    const double al = alpha.value();
    const double ratio = gamma_eval(delta) / gamma_eval(al + delta);
    return ratio * std::pow(diff, al + delta - 1.0);
}

double frac_integral_numeric(const FracOrder& alpha, const std::function<double(double)>& f,
                             const PsiSpec& psi, double a, double t, int nodes,
                             double grading) {
    if (!(t > a)) throw DomainError("frac_integral_numeric: requires t > a");
    if (nodes < 2) throw DomainError("frac_integral_numeric: nodes must be >= 2");
    if (!(grading >= 1.0)) throw DomainError("frac_integral_numeric: grading must be >= 1");
    const double al = alpha.value();
    if (al == 0.0) return f(t);  // identity branch

    const double s_lo = psi.value(a);
    const double s_hi = psi.value(t);
    const auto s = graded_mesh(s_lo, s_hi, nodes, grading);

    std::vector<double> g(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double tau = (i == 0) ? a : (i + 1 == s.size() ? t : psi.inverse(s[i]));
        g[i] = f(tau);
    }
    if (!std::isfinite(g[0])) g[0] = g[1];  // integrable lower-endpoint singularity
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!std::isfinite(g[i]))
            throw NonFiniteError("frac_integral_numeric: f returned a non-finite value");

    return product_integrate(al, s, g) / gamma_eval(al);
}

double default_grid_step(double a, double t) {
    return 1e-4 * std::max(1.0, t - a);
}

double caputo_derivative_numeric(const FracOrder& alpha, const std::function<double(double)>& f,
                                 const PsiSpec& psi, double a, double t, double grid_step,
                                 int nodes) {
    if (!(t > a)) throw DomainError("caputo_derivative_numeric: requires t > a");
    const double al = alpha.value();
    if (!(al > 0.0) || al > 1.0)
        throw DomainError("caputo_derivative_numeric: alpha must lie in (0, 1]");
    if (!(grid_step > 0.0)) throw StepError("caputo_derivative_numeric: grid_step must be positive");
    if (grid_step >= 0.5 * (t - a))
        throw StepError("caputo_derivative_numeric: grid_step >= (t-a)/2");

    if (al == 1.0) {
        // Classical path: f'(t)/psi'(t), central difference.
        const double h = std::min(grid_step, 0.49 * (t - a));
        const double d = (f(t + h) - f(t - h)) / (2.0 * h);
        if (!std::isfinite(d))
            throw NonFiniteError("caputo_derivative_numeric: f returned a non-finite value");
        return d / psi.derivative(t);
    }

    int cells = nodes;
    if (cells == 0) {
        const double suggested = std::ceil((t - a) / grid_step);
        cells = static_cast<int>(std::clamp(suggested, 16.0, 1048576.0));
    }
    if (cells < 2) throw DomainError("caputo_derivative_numeric: nodes must be >= 2");

    const double s_lo = psi.value(a);
    const double s_hi = psi.value(t);
    const double ds = (s_hi - s_lo) / cells;

    // L1 scheme: D = (1/Gamma(1-alpha)) sum_i slope_i int_cell (S-s)^{-alpha} ds,
    // slope_i = (G_{i+1} - G_i)/ds with G = f o psi^{-1}.
    double prev = f(a);
    if (!std::isfinite(prev))
        throw NonFiniteError("caputo_derivative_numeric: f returned a non-finite value");
    double total = 0.0;
    const double mu = 1.0 - al;
    double s_cur = s_lo;
    for (int i = 0; i < cells; ++i) {
        const double s_next = (i + 1 == cells) ? s_hi : s_lo + (i + 1) * ds;
        const double d = s_next - s_cur;
        if (d > 0.0) {
            const double tau = (i + 1 == cells) ? t : psi.inverse(s_next);
            const double cur = f(tau);
            if (!std::isfinite(cur))
                throw NonFiniteError("caputo_derivative_numeric: f returned a non-finite value");
            const double A = std::max(s_hi - s_cur, d);  // roundoff guard on the last cells
            total += (cur - prev) / d * kernel_moments(mu, A, d).m0;
            prev = cur;
        }
        s_cur = s_next;
    }
    return total / gamma_eval(mu);
}

}  // namespace psiham
