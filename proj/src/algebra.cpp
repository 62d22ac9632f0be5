#include "psiham/algebra.hpp"

namespace psiham {

double temporal_factor(TempExponent e, double alpha, double psi_diff) {
    const double b = e.beta(alpha);
    if (b == 0.0) return 1.0;
    return std::pow(psi_diff, b) / gamma_eval(b + 1.0);
}

double temporal_product_ratio(TempExponent a, TempExponent b, double alpha) {
    const double ba = a.beta(alpha);
    const double bb = b.beta(alpha);
    if (ba == 0.0 || bb == 0.0) return 1.0;
    return gamma_eval(ba + bb + 1.0) / (gamma_eval(ba + 1.0) * gamma_eval(bb + 1.0));
}

// --- CylindricalExpr -------------------------------------------------------

CylindricalExpr CylindricalExpr::monomial(int n, double c) {
    CylindricalExpr e;
    e.add(n, c);
    return e;
}

CylindricalExpr& CylindricalExpr::add(int n, double c) {
    if (c == 0.0) return *this;
    auto it = coef_.find(n);
    if (it == coef_.end()) {
        coef_.emplace(n, c);
    } else {
        it->second += c;
        if (it->second == 0.0) coef_.erase(it);
    }
    return *this;
}

double CylindricalExpr::coefficient(int n) const {
    auto it = coef_.find(n);
    return it == coef_.end() ? 0.0 : it->second;
}

double CylindricalExpr::eval(double r) const {
    double total = 0.0;
    for (const auto& [n, c] : coef_) {
        if (n < 0 && r == 0.0)
            throw SingularPointError("CylindricalExpr: evaluation at r = 0 with negative exponent");
        total += (n == 0) ? c : c * std::pow(r, n);
    }
    return total;
}

CylindricalExpr CylindricalExpr::operator*(double s) const {
    CylindricalExpr out;
    if (s == 0.0) return out;
    for (const auto& [n, c] : coef_) out.add(n, c * s);
    return out;
}

CylindricalExpr CylindricalExpr::operator+(const CylindricalExpr& o) const {
    CylindricalExpr out = *this;
    for (const auto& [n, c] : o.coef_) out.add(n, c);
    return out;
}

CylindricalExpr cylindrical_operator(const CylindricalExpr& e) {
    CylindricalExpr out;
    for (const auto& [n, c] : e.monomials()) {
        if (n == 0) continue;
        out.add(n - 2, c * static_cast<double>(n) * static_cast<double>(n));
    }
    return out;
}

// --- PlanarExpr ------------------------------------------------------------

PlanarExpr PlanarExpr::constant(double c) {
    PlanarExpr e;
    e.add_constant(c);
    return e;
}

PlanarExpr PlanarExpr::sine(int k, double c) {
    PlanarExpr e;
    e.add_sine(k, c);
    return e;
}

PlanarExpr PlanarExpr::cosine(int k, double c) {
    PlanarExpr e;
    e.add_cosine(k, c);
    return e;
}

PlanarExpr& PlanarExpr::add_constant(double c) {
    c0_ += c;
    return *this;
}

void PlanarExpr::prune(int k) {
    auto it = harm_.find(k);
    if (it != harm_.end() && it->second[0] == 0.0 && it->second[1] == 0.0) harm_.erase(it);
}

PlanarExpr& PlanarExpr::add_sine(int k, double c) {
    if (c == 0.0) return *this;
    if (k == 0) return *this;  // sin(0) = 0
    if (k < 0) return add_sine(-k, -c);
    harm_[k][0] += c;
    prune(k);
    return *this;
}

PlanarExpr& PlanarExpr::add_cosine(int k, double c) {
    if (c == 0.0) return *this;
    if (k == 0) return add_constant(c);  // cos(0) = 1
    if (k < 0) return add_cosine(-k, c);
    harm_[k][1] += c;
    prune(k);
    return *this;
}

std::array<double, 2> PlanarExpr::harmonic(int k) const {
    auto it = harm_.find(k);
    return it == harm_.end() ? std::array<double, 2>{0.0, 0.0} : it->second;
}

bool PlanarExpr::empty() const {
    return c0_ == 0.0 && harm_.empty();
}

double PlanarExpr::eval(double theta) const {
    double total = c0_;
    for (const auto& [k, sc] : harm_)
        total += sc[0] * std::sin(k * theta) + sc[1] * std::cos(k * theta);
    return total;
}

PlanarExpr PlanarExpr::theta_derivative() const {
    PlanarExpr out;
    for (const auto& [k, sc] : harm_) {
        out.add_cosine(k, sc[0] * k);
        out.add_sine(k, -sc[1] * k);
    }
    return out;
}

PlanarExpr PlanarExpr::operator*(double s) const {
    PlanarExpr out;
    if (s == 0.0) return out;
    out.c0_ = c0_ * s;
    for (const auto& [k, sc] : harm_) {
        out.add_sine(k, sc[0] * s);
        out.add_cosine(k, sc[1] * s);
    }
    return out;
}

PlanarExpr PlanarExpr::operator+(const PlanarExpr& o) const {
    PlanarExpr out = *this;
    out.c0_ += o.c0_;
    for (const auto& [k, sc] : o.harm_) {
        out.add_sine(k, sc[0]);
        out.add_cosine(k, sc[1]);
    }
    return out;
}

PlanarExpr planar_laplacian(const PlanarExpr& e) {
    PlanarExpr out;
    for (const auto& [k, sc] : e.harmonics()) {
        const double factor = -2.0 * k * k;
        out.add_sine(k, sc[0] * factor);
        out.add_cosine(k, sc[1] * factor);
    }
    return out;
}

PlanarExpr planar_product(const PlanarExpr& a, const PlanarExpr& b) {
    PlanarExpr out;
    // constant x constant, constant x harmonics
    out.add_constant(a.constant_part() * b.constant_part());
    for (const auto& [k, sc] : b.harmonics()) {
        out.add_sine(k, a.constant_part() * sc[0]);
        out.add_cosine(k, a.constant_part() * sc[1]);
    }
    for (const auto& [k, sc] : a.harmonics()) {
        out.add_sine(k, b.constant_part() * sc[0]);
        out.add_cosine(k, b.constant_part() * sc[1]);
    }
    // harmonic x harmonic via product-to-sum:
    //   sin A sin B = (cos(A-B) - cos(A+B))/2
    //   cos A cos B = (cos(A-B) + cos(A+B))/2
    //   sin A cos B = (sin(A+B) + sin(A-B))/2
    for (const auto& [ka, sa] : a.harmonics()) {
        for (const auto& [kb, sb] : b.harmonics()) {
            const int kd = ka - kb;
            const int ks = ka + kb;
            const double ss = sa[0] * sb[0];
            out.add_cosine(kd, 0.5 * ss);
            out.add_cosine(ks, -0.5 * ss);
            const double cc = sa[1] * sb[1];
            out.add_cosine(kd, 0.5 * cc);
            out.add_cosine(ks, 0.5 * cc);
            const double sc = sa[0] * sb[1];
            out.add_sine(ks, 0.5 * sc);
            out.add_sine(kd, 0.5 * sc);
            const double cs = sa[1] * sb[0];
            out.add_sine(ks, 0.5 * cs);
            out.add_sine(-kd, 0.5 * cs);  // sin(B-A) term of cos A sin B
        }
    }
    return out;
}

PlanarExpr planar_convection(const std::vector<PlanarExpr>& us,
                             const std::vector<PlanarExpr>& vs,
                             const std::vector<PlanarExpr>& ws, int m) {
    if (m < 0) throw LengthError("planar_convection: m must be >= 0");
    const auto n = static_cast<std::size_t>(m);
    if (us.size() != n || vs.size() != n || ws.size() != n)
        throw LengthError("planar_convection: lists must hold exactly orders 0..m-1");
    PlanarExpr total;
    for (int i = 0; i < m; ++i) {
        const PlanarExpr carrier = us[static_cast<std::size_t>(i)] + vs[static_cast<std::size_t>(i)];
        const PlanarExpr grad = ws[static_cast<std::size_t>(m - 1 - i)].theta_derivative();
        total = total + planar_product(carrier, grad);
    }
    return total;
}

SpatialExpr cylindrical_operator(const SpatialExpr& e) {
    if (const auto* c = std::get_if<CylindricalExpr>(&e)) return cylindrical_operator(*c);
    throw VariantError("cylindrical_operator: planar expression passed");
}

SpatialExpr planar_laplacian(const SpatialExpr& e) {
    if (const auto* p = std::get_if<PlanarExpr>(&e)) return planar_laplacian(*p);
    throw VariantError("planar_laplacian: cylindrical expression passed");
}

// --- term sums -------------------------------------------------------------

TermSum<PlanarExpr> termsum_product(const TermSum<PlanarExpr>& a,
                                    const TermSum<PlanarExpr>& b, double alpha) {
    TermSum<PlanarExpr> out;
    for (const auto& [ea, sa] : a.parts()) {
        for (const auto& [eb, sb] : b.parts()) {
            const double ratio = temporal_product_ratio(ea, eb, alpha);
            out.add(ea + eb, planar_product(sa, sb) * ratio);
        }
    }
    return out;
}

double max_coefficient_difference(const TermSum<CylindricalExpr>& a,
                                  const TermSum<CylindricalExpr>& b) {
    double worst = 0.0;
    auto scan = [&](const TermSum<CylindricalExpr>& lhs, const TermSum<CylindricalExpr>& rhs) {
        for (const auto& [e, s] : lhs.parts()) {
            auto it = rhs.parts().find(e);
            for (const auto& [n, c] : s.monomials()) {
                const double other = it == rhs.parts().end() ? 0.0 : it->second.coefficient(n);
                worst = std::max(worst, std::fabs(c - other));
            }
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

double max_coefficient_difference(const TermSum<PlanarExpr>& a,
                                  const TermSum<PlanarExpr>& b) {
    double worst = 0.0;
    auto scan = [&](const TermSum<PlanarExpr>& lhs, const TermSum<PlanarExpr>& rhs) {
        for (const auto& [e, s] : lhs.parts()) {
            auto it = rhs.parts().find(e);
            const bool have = it != rhs.parts().end();
            worst = std::max(worst, std::fabs(s.constant_part() -
                                              (have ? it->second.constant_part() : 0.0)));
            for (const auto& [k, sc] : s.harmonics()) {
                const auto other = have ? it->second.harmonic(k) : std::array<double, 2>{0, 0};
                worst = std::max(worst, std::fabs(sc[0] - other[0]));
                worst = std::max(worst, std::fabs(sc[1] - other[1]));
            }
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

namespace {

double psi_difference(const PsiSpec& psi, double a, double t) {
    if (t < a) throw DomainError("series_eval: t < a");
    return psi.value(t) - psi.value(a);
}

template <class S>
void check_depth(const std::vector<TermSum<S>>& orders, int orders_used) {
    if (orders_used > static_cast<int>(orders.size()) - 1)
        throw OrderError("series_eval: orders_used exceeds the stored depth");
}

}  // namespace

double series_eval(const CylindricalSeries& s, const PsiSpec& psi, double a, double r,
                   double t, int orders_used) {
    check_depth(s.orders, orders_used);
    const double diff = psi_difference(psi, a, t);
    const int last = orders_used < 0 ? static_cast<int>(s.orders.size()) - 1 : orders_used;
    double total = 0.0;
    for (int m = 0; m <= last; ++m)
        total += s.orders[static_cast<std::size_t>(m)].eval(
            [r](const CylindricalExpr& e) { return e.eval(r); }, s.alpha, diff);
    return total;
}

std::pair<double, double> series_eval(const PlanarCoupledSeries& s, const PsiSpec& psi,
                                      double a, double x, double y, double t,
                                      int orders_used) {
    check_depth(s.u_orders, orders_used);
    check_depth(s.v_orders, orders_used);
    const double diff = psi_difference(psi, a, t);
    const double theta = x + y;
    auto at = [theta](const PlanarExpr& e) { return e.eval(theta); };
    const int last_u = orders_used < 0 ? static_cast<int>(s.u_orders.size()) - 1 : orders_used;
    const int last_v = orders_used < 0 ? static_cast<int>(s.v_orders.size()) - 1 : orders_used;
    double u = 0.0, v = 0.0;
    for (int m = 0; m <= last_u; ++m)
        u += s.u_orders[static_cast<std::size_t>(m)].eval(at, s.alpha, diff);
    for (int m = 0; m <= last_v; ++m)
        v += s.v_orders[static_cast<std::size_t>(m)].eval(at, s.alpha, diff);
    return {u, v};
}

}  // namespace psiham
