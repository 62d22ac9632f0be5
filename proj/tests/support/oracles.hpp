#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they are used to check.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracles {

// Brute-force evaluation of the weighted integral
//   (1/Gamma(alpha)) * int_a^t psi'(tau) (psi(t)-psi(tau))^{alpha-1} f(tau) dtau
// via the substitution s = psi(tau) and tanh-sinh quadrature. The integral
// is split at the midpoint so each endpoint singularity (kernel at the top,
// possibly the data at the bottom) sits at an integration origin, where the
// singular factor is computed from the quadrature variable directly.
inline double frac_integral_bruteforce(double alpha,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& psi,
                                       const std::function<double(double)>& psi_inv,
                                       double a, double t) {
    const double s_lo = psi(a);
    const double L = psi(t) - s_lo;
    auto G = [&](double x) { return f(psi_inv(s_lo + x)); };

    boost::math::quadrature::tanh_sinh<double> integrator;
    auto lower = [&](double x) { return std::pow(L - x, alpha - 1.0) * G(x); };
    auto upper = [&](double y) { return std::pow(y, alpha - 1.0) * G(L - y); };
    const double raw = integrator.integrate(lower, 0.0, 0.5 * L, 1e-12) +
                       integrator.integrate(upper, 0.0, 0.5 * L, 1e-12);
    return raw / std::tgamma(alpha);
}

// Mittag-Leffler E_alpha(z) by direct long double summation of the power
// series, Kahan-compensated. Good to ~1e-17 absolute for |z| <= 10.
inline long double mittag_leffler_longdouble(long double alpha, long double z,
                                             int terms = 400) {
    long double sum = 0.0L, comp = 0.0L;
    for (int m = 0; m < terms; ++m) {
        const long double lg = std::lgamma(static_cast<long double>(m) * alpha + 1.0L);
        long double term = (z == 0.0L && m > 0)
                               ? 0.0L
                               : std::copysign(std::exp(m * std::log(std::fabs(z)) - lg),
                                               (z < 0.0L && (m & 1)) ? -1.0L : 1.0L);
        if (m == 0) term = 1.0L;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (m > 4 && std::fabs(term) < 1e-25L * std::fabs(sum)) break;
    }
    return sum;
}

// Identity oracle for alpha = 1/2: E_{1/2}(z) = exp(z^2) * erfc(-z).
inline long double mittag_leffler_half_erfc(long double z) {
    return std::exp(z * z) * std::erfc(-z);
}

// Independent brute-force recursion for the tube problem at the Adomian
// point (h = -1, nu = 1): Laurent monomials as exponent -> integer
// coefficient, radial operator c*r^n -> c*n^2*r^{n-2}. After m steps the
// single surviving monomial carries the order-m series coefficient.
// Deliberately shares no code with the library's term algebra.
inline std::map<int, std::int64_t> tube_adomian_step(const std::map<int, std::int64_t>& u) {
    std::map<int, std::int64_t> next;
    for (const auto& [n, c] : u) {
        if (n == 0) continue;
        next[n - 2] += c * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
    }
    return next;
}

inline std::vector<std::int64_t> tube_series_coefficients_bruteforce(int kmax) {
    std::vector<std::int64_t> coeffs;
    std::map<int, std::int64_t> u{{1, 1}};  // initial data r
    for (int k = 1; k <= kmax; ++k) {
        u = tube_adomian_step(u);
        coeffs.push_back(u.begin()->second);
    }
    return coeffs;
}

}  // namespace oracles
