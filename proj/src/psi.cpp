#include "psiham/psi.hpp"

#include <cmath>

namespace psiham {

PsiSpec PsiSpec::identity() {
    return PsiSpec(
        PsiKind::Identity, [](double t) { return t; }, [](double) { return 1.0; },
        [](double s) { return s; }, -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity());
}

PsiSpec PsiSpec::logarithm() {
    return PsiSpec(
        PsiKind::Logarithm, [](double t) { return std::log(t); },
        [](double t) { return 1.0 / t; }, [](double s) { return std::exp(s); }, 0.0,
        std::numeric_limits<double>::infinity());
}

PsiSpec PsiSpec::custom(Map value, Map derivative, Map inverse, double domain_lo,
                        double domain_hi) {
    if (!value || !derivative || !inverse)
        throw ParameterError("PsiSpec::custom: value, derivative and inverse maps are all required");
    if (!(domain_lo < domain_hi))
        throw ParameterError("PsiSpec::custom: domain must satisfy lo < hi");
    return PsiSpec(PsiKind::Custom, std::move(value), std::move(derivative),
                   std::move(inverse), domain_lo, domain_hi);
}

const char* PsiSpec::name() const {
    switch (kind_) {
        case PsiKind::Identity: return "identity";
        case PsiKind::Logarithm: return "log";
        case PsiKind::Custom: return "custom";
    }
    return "unknown";
}

void PsiSpec::require_domain(double t) const {
    if (!std::isfinite(t)) throw DomainError("psi: non-finite time argument");
    if (kind_ == PsiKind::Logarithm && t <= 0.0)
        throw DomainError("psi: logarithm requires t > 0");
    if (t < lo_ || t > hi_)
        throw DomainError("psi: t = " + std::to_string(t) + " outside domain");
}

double PsiSpec::value(double t) const {
    require_domain(t);
    return value_(t);
}

double PsiSpec::derivative(double t) const {
    require_domain(t);
    const double d = derivative_(t);
    if (!(d > 0.0)) throw DomainError("psi: derivative must be strictly positive");
    return d;
}

double PsiSpec::inverse(double s) const {
    return inverse_(s);
}

std::pair<double, double> psi_eval(const PsiSpec& psi, double t) {
    return {psi.value(t), psi.derivative(t)};
}

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw DomainError("FracOrder: alpha must be finite and >= 0");
}

FracOrder FracOrder::solver_order(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("FracOrder: solver path requires alpha in (0, 1]");
    return FracOrder(alpha);
}

bool FracOrder::is_integer() const {
    return alpha_ == std::floor(alpha_);
}

int FracOrder::n() const {
    if (is_integer()) return static_cast<int>(alpha_);
    return static_cast<int>(std::floor(alpha_)) + 1;
}

}  // namespace psiham
