#include "psiham/serialize.hpp"

namespace psiham {

using nlohmann::json;

namespace {

json termsum_to_json(const TermSum<CylindricalExpr>& sum) {
    json terms = json::array();
    for (const auto& [e, s] : sum.parts()) {
        json monomials = json::array();
        for (const auto& [n, c] : s.monomials())
            monomials.push_back(json{{"n", n}, {"c", c}});
        terms.push_back(json{{"k", e.k}, {"j", e.j}, {"monomials", monomials}});
    }
    return terms;
}

json termsum_to_json(const TermSum<PlanarExpr>& sum) {
    json terms = json::array();
    for (const auto& [e, s] : sum.parts()) {
        json harmonics = json::array();
        for (const auto& [k, sc] : s.harmonics())
            harmonics.push_back(json{{"k", k}, {"sin", sc[0]}, {"cos", sc[1]}});
        terms.push_back(json{{"k", e.k},
                             {"j", e.j},
                             {"constant", s.constant_part()},
                             {"harmonics", harmonics}});
    }
    return terms;
}

TermSum<CylindricalExpr> cyl_termsum_from_json(const json& j) {
    TermSum<CylindricalExpr> sum;
    for (const auto& term : j) {
        CylindricalExpr e;
        for (const auto& mono : term.at("monomials"))
            e.add(mono.at("n").get<int>(), mono.at("c").get<double>());
        sum.add(TempExponent{term.at("k").get<int>(), term.at("j").get<int>()}, e);
    }
    return sum;
}

TermSum<PlanarExpr> planar_termsum_from_json(const json& j) {
    TermSum<PlanarExpr> sum;
    for (const auto& term : j) {
        PlanarExpr e;
        e.add_constant(term.at("constant").get<double>());
        for (const auto& h : term.at("harmonics")) {
            e.add_sine(h.at("k").get<int>(), h.at("sin").get<double>());
            e.add_cosine(h.at("k").get<int>(), h.at("cos").get<double>());
        }
        sum.add(TempExponent{term.at("k").get<int>(), term.at("j").get<int>()}, e);
    }
    return sum;
}

}  // namespace

json to_json(const CylindricalSeries& s) {
    json orders = json::array();
    for (const auto& sum : s.orders) orders.push_back(termsum_to_json(sum));
    return json{{"format", "psiham-series/1"},
                {"variant", "cylindrical"},
                {"alpha", s.alpha},
                {"orders", orders}};
}

json to_json(const PlanarCoupledSeries& s) {
    json u = json::array(), v = json::array();
    for (const auto& sum : s.u_orders) u.push_back(termsum_to_json(sum));
    for (const auto& sum : s.v_orders) v.push_back(termsum_to_json(sum));
    return json{{"format", "psiham-series/1"},
                {"variant", "planar-pair"},
                {"alpha", s.alpha},
                {"u_orders", u},
                {"v_orders", v}};
}

json to_json(const HamSeries& s) {
    return std::visit([](const auto& inner) { return to_json(inner); }, s);
}

HamSeries ham_series_from_json(const json& j) {
    if (j.value("format", "") != "psiham-series/1")
        throw ParameterError("series document: unknown format tag");
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "cylindrical") {
        CylindricalSeries s;
        s.alpha = j.at("alpha").get<double>();
        for (const auto& sum : j.at("orders")) s.orders.push_back(cyl_termsum_from_json(sum));
        return s;
    }
    if (variant == "planar-pair") {
        PlanarCoupledSeries s;
        s.alpha = j.at("alpha").get<double>();
        for (const auto& sum : j.at("u_orders"))
            s.u_orders.push_back(planar_termsum_from_json(sum));
        for (const auto& sum : j.at("v_orders"))
            s.v_orders.push_back(planar_termsum_from_json(sum));
        return s;
    }
    throw ParameterError("series document: unknown variant '" + variant + "'");
}

json to_json(const ProblemSpec& p) {
    if (p.psi().kind() == PsiKind::Custom)
        throw ParameterError("problem document: custom psi maps are not serializable");
    json j{{"app", app_name(p.app())},
           {"alpha", p.alpha()},
           {"psi", p.psi().name()},
           {"a", p.a()}};
    switch (p.app()) {
        case AppKind::TubePressure:
            j["nu"] = p.nu();
            j["P"] = p.pressure();
            break;
        case AppKind::Tube:
            j["nu"] = p.nu();
            break;
        case AppKind::PlanarSystem:
            j["rho0"] = p.rho0();
            j["g"] = p.g();
            break;
    }
    return j;
}

ProblemSpec problem_from_json(const json& j) {
    const AppKind app = app_from_name(j.at("app").get<std::string>());
    const std::string psi_name = j.at("psi").get<std::string>();
    PsiSpec psi = PsiSpec::identity();
    if (psi_name == "log") {
        psi = PsiSpec::logarithm();
    } else if (psi_name != "identity") {
        throw ParameterError("problem document: unknown psi '" + psi_name + "'");
    }
    const double alpha = j.at("alpha").get<double>();
    const double a = j.at("a").get<double>();
    switch (app) {
        case AppKind::TubePressure:
            return ProblemSpec::tube_pressure(alpha, std::move(psi), a,
                                              j.at("nu").get<double>(),
                                              j.at("P").get<double>());
        case AppKind::Tube:
            return ProblemSpec::tube(alpha, std::move(psi), a, j.at("nu").get<double>());
        case AppKind::PlanarSystem:
            return ProblemSpec::planar(alpha, std::move(psi), a, j.at("rho0").get<double>(),
                                       j.at("g").get<double>());
    }
    throw ParameterError("problem document: unreachable");
}

}  // namespace psiham
