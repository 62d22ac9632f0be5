#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psiham/ham.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace psiham;

namespace {

ProblemSpec tube_pressure_problem(double alpha = 0.5, double nu = 1.0, double P = 1.0) {
    return ProblemSpec::tube_pressure(alpha, PsiSpec::logarithm(), 1.0, nu, P);
}

ProblemSpec tube_problem(double alpha = 0.5, double nu = 1.0) {
    return ProblemSpec::tube(alpha, PsiSpec::logarithm(), 1.0, nu);
}

ProblemSpec planar_problem(double alpha = 0.5, double rho0 = 1.0, double g = 0.0) {
    return ProblemSpec::planar(alpha, PsiSpec::logarithm(), 1.0, rho0, g);
}

}  // namespace

TEST_CASE("gate constant") {
    CHECK(chi(0) == 0);
    CHECK(chi(1) == 0);
    CHECK(chi(2) == 1);
    CHECK(chi(9) == 1);
    CHECK_THROWS_AS(chi(-1), DomainError);
}

TEST_CASE("config validation") {
    HamConfig bad;
    bad.hbar = 0.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad.hbar = -1.0;
    bad.orders = -2;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("first order of the pressure-driven tube recursion") {
    const auto problem = tube_pressure_problem(0.5, 0.8, 2.5);
    CylindricalSeries base;
    base.alpha = problem.alpha();
    TermSum<CylindricalExpr> u0;
    u0.add({0, 0}, problem.initial_cylindrical());
    base.orders = {u0};

    for (double hbar : {-1.0, -0.7, 0.3}) {
        const auto u1 = ham_next_order(problem, base, 1, hbar);
        CHECK(u1.parts().size() == 1);
        const auto& [e, s] = *u1.parts().begin();
        CHECK(e == TempExponent{1, 0});
        CHECK(s.coefficient(0) ==
              doctest::Approx(-hbar * (2.5 - 4.0 * 0.8)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(ham_next_order(problem, base, 2, -0.7), OrderError);
    CHECK_THROWS_AS(ham_next_order(problem, base, 0, -0.7), OrderError);
}

TEST_CASE("second order of the tube recursion matches the listed terms") {
    const double hbar = -0.7, nu = 1.3;
    const auto problem = tube_problem(0.6, nu);
    HamConfig config;
    config.hbar = hbar;
    config.orders = 2;
    const auto series = std::get<CylindricalSeries>(ham_series(problem, config));
    const auto& u2 = series.orders[2];
    CHECK(u2.parts().size() == 2);
    CHECK(u2.parts().at({1, 0}).coefficient(-1) ==
          doctest::Approx(-(1.0 + hbar) * hbar * nu).epsilon(1e-15));
    CHECK(u2.parts().at({2, 0}).coefficient(-3) ==
          doctest::Approx(hbar * hbar * nu * nu).epsilon(1e-15));
}

TEST_CASE("first coupled order carries the diffusion and forcing parts") {
    const double hbar = -0.6, rho0 = 1.4, g = 0.9;
    const auto problem = planar_problem(0.5, rho0, g);
    PlanarCoupledSeries base;
    base.alpha = problem.alpha();
    const auto [u0, v0] = problem.initial_planar();
    TermSum<PlanarExpr> uf, vf;
    uf.add({0, 0}, u0);
    vf.add({0, 0}, v0);
    base.u_orders = {uf};
    base.v_orders = {vf};

    const auto [u1, v1] = ham_next_order(problem, base, 1, hbar, hbar);
    CHECK(u1.parts().at({1, 0}).harmonic(1)[0] ==
          doctest::Approx(-2.0 * hbar * rho0).epsilon(1e-15));
    CHECK(u1.parts().at({1, 0}).constant_part() == doctest::Approx(-hbar * g).epsilon(1e-15));
    CHECK(max_coefficient_difference(v1, u1 * -1.0) == 0.0);
}

TEST_CASE("Adomian point: pressure-driven tube terminates after one order") {
    const auto problem = tube_pressure_problem();
    HamConfig config;
    config.hbar = -1.0;
    config.orders = 3;
    const auto series = std::get<CylindricalSeries>(ham_series(problem, config));
    REQUIRE(series.orders.size() == 4);
    CHECK(!series.orders[1].empty());
    CHECK(series.orders[2].empty());
    CHECK(series.orders[3].empty());
}

TEST_CASE("Adomian point: tube orders match the brute-force recursion") {
    const auto problem = tube_problem(0.5, 1.0);
    HamConfig config;
    config.hbar = -1.0;
    config.orders = 6;
    const auto series = std::get<CylindricalSeries>(ham_series(problem, config));
    const auto oracle = oracles::tube_series_coefficients_bruteforce(6);
    for (int m = 1; m <= 6; ++m) {
        const auto& order = series.orders[static_cast<std::size_t>(m)];
        REQUIRE(order.parts().size() == 1);
        const auto& [e, s] = *order.parts().begin();
        CHECK(e == TempExponent{m, 0});
        CHECK(s.coefficient(1 - 2 * m) ==
              doctest::Approx(static_cast<double>(oracle[static_cast<std::size_t>(m - 1)]))
                  .epsilon(1e-15));
    }
}

TEST_CASE("zero orders keeps just the initial guess") {
    HamConfig config;
    config.orders = 0;
    const auto series = std::get<CylindricalSeries>(ham_series(tube_problem(), config));
    CHECK(series.orders.size() == 1);
}

TEST_CASE("coupled antisymmetry at equal auxiliary parameters") {
    const auto problem = planar_problem(0.7, 1.2, 0.5);
    HamConfig config;
    config.hbar = -0.8;
    config.orders = 5;
    const auto series = std::get<PlanarCoupledSeries>(ham_series(problem, config));
    for (std::size_t m = 0; m < series.u_orders.size(); ++m)
        CHECK(max_coefficient_difference(series.v_orders[m], series.u_orders[m] * -1.0) == 0.0);
}

TEST_CASE("distinct auxiliary parameters activate the convection cross terms") {
    const double h1 = -0.6, h2 = -0.4, rho = 1.3;
    const auto problem = planar_problem(0.5, rho, 0.0);
    HamConfig config;
    config.hbar = h1;
    config.hbar2 = h2;
    config.use_hbar2 = true;
    config.orders = 2;
    const auto series = std::get<PlanarCoupledSeries>(ham_series(problem, config));

    // Hand-derived second order:
    //   u2 = -2(1+h1)h1 rho sin T_a + h1(h1-h2) rho sin(2.) T_2a - 4 h1^2 rho^2 sin T_2a
    //   v2 =  2(1+h2)h2 rho sin T_a - h2(h1-h2) rho sin(2.) T_2a + 4 h2^2 rho^2 sin T_2a
    const auto& u2 = series.u_orders[2];
    CHECK(u2.parts().at({1, 0}).harmonic(1)[0] ==
          doctest::Approx(-2.0 * (1.0 + h1) * h1 * rho).epsilon(1e-14));
    CHECK(u2.parts().at({2, 0}).harmonic(2)[0] ==
          doctest::Approx(h1 * (h1 - h2) * rho).epsilon(1e-14));
    CHECK(u2.parts().at({2, 0}).harmonic(1)[0] ==
          doctest::Approx(-4.0 * h1 * h1 * rho * rho).epsilon(1e-14));
    const auto& v2 = series.v_orders[2];
    CHECK(v2.parts().at({1, 0}).harmonic(1)[0] ==
          doctest::Approx(2.0 * (1.0 + h2) * h2 * rho).epsilon(1e-14));
    CHECK(v2.parts().at({2, 0}).harmonic(2)[0] ==
          doctest::Approx(-h2 * (h1 - h2) * rho).epsilon(1e-14));
    CHECK(v2.parts().at({2, 0}).harmonic(1)[0] ==
          doctest::Approx(4.0 * h2 * h2 * rho * rho).epsilon(1e-14));
}

TEST_CASE("resummation of the pressure-driven tube gives the closed form") {
    const auto problem = tube_pressure_problem(0.5, 0.8, 2.5);
    const auto series = std::get<CylindricalSeries>(resum_geometric(problem, -0.5));
    REQUIRE(series.orders.size() >= 2);
    CHECK(series.orders[1].parts().at({1, 0}).coefficient(0) ==
          doctest::Approx(2.5 - 4.0 * 0.8).epsilon(1e-14));
    for (std::size_t m = 2; m < series.orders.size(); ++m) CHECK(series.orders[m].empty());
}

TEST_CASE("resummation of the planar system reproduces the envelope coefficients") {
    const double rho0 = 1.1;
    const auto problem = planar_problem(0.4, rho0, 0.0);
    const auto series = std::get<PlanarCoupledSeries>(resum_geometric(problem, -0.5, 8));
    for (int k = 1; k <= 8; ++k) {
        const auto& order = series.u_orders[static_cast<std::size_t>(k)];
        REQUIRE(order.parts().size() == 1);
        CHECK(order.parts().at({k, 0}).harmonic(1)[0] ==
              doctest::Approx(-std::pow(-2.0 * rho0, k)).epsilon(1e-13));
    }
}

TEST_CASE("resummation is identical across the convergence region") {
    const auto problem = tube_problem(0.5, 1.0);
    const auto a = std::get<CylindricalSeries>(resum_geometric(problem, -0.5, 6));
    const auto b = std::get<CylindricalSeries>(resum_geometric(problem, -1.0, 6));
    const auto c = std::get<CylindricalSeries>(resum_geometric(problem, -1.5, 6));
    REQUIRE(a.orders.size() == b.orders.size());
    REQUIRE(a.orders.size() == c.orders.size());
    for (std::size_t m = 0; m < a.orders.size(); ++m) {
        CHECK(max_coefficient_difference(a.orders[m], b.orders[m]) == 0.0);
        CHECK(max_coefficient_difference(a.orders[m], c.orders[m]) == 0.0);
    }
}

TEST_CASE("convergence region is enforced") {
    CHECK_THROWS_AS(resum_geometric(tube_pressure_problem(), -2.5), ConvergenceRegionError);
    CHECK_THROWS_AS(resum_geometric(tube_pressure_problem(), 0.5), ConvergenceRegionError);
    CHECK_THROWS_AS(resum_geometric(planar_problem(), -0.5, -2.5, 4), ConvergenceRegionError);
}

TEST_CASE("Adomian equivalence: h = -1 series equals the collapsed one") {
    const auto problem = tube_problem(0.5, 1.4);
    HamConfig config;
    config.hbar = -1.0;
    config.orders = 5;
    const auto adm = std::get<CylindricalSeries>(ham_series(problem, config));
    const auto closed = std::get<CylindricalSeries>(resum_geometric(problem, -0.5, 5));
    REQUIRE(adm.orders.size() == closed.orders.size());
    for (std::size_t m = 0; m < adm.orders.size(); ++m)
        CHECK(max_coefficient_difference(adm.orders[m], closed.orders[m]) <= 1e-15);
}

TEST_CASE("initial condition is preserved at every truncation order") {
    const auto id = PsiSpec::identity();
    const auto problem = ProblemSpec::tube_pressure(0.7, id, 0.0, 1.0, 1.0);
    HamConfig config;
    config.hbar = -0.7;
    config.orders = 6;
    const auto series = std::get<CylindricalSeries>(ham_series(problem, config));
    for (int m = 0; m <= 6; ++m)
        for (double r : {0.2, 0.8})
            CHECK(series_eval(series, id, 0.0, r, 0.0, m) ==
                  doctest::Approx(1.0 - r * r).epsilon(1e-15));
}

TEST_CASE("forcing terms are injected at first order only") {
    // At the Adomian point there is no propagation, so a change of g can
    // only show up where the gate (1 - chi_m) is open.
    const auto with_g = planar_problem(0.5, 1.0, 7.0);
    const auto without_g = planar_problem(0.5, 1.0, 0.0);
    HamConfig config;
    config.hbar = -1.0;
    config.orders = 4;
    const auto a = std::get<PlanarCoupledSeries>(ham_series(with_g, config));
    const auto b = std::get<PlanarCoupledSeries>(ham_series(without_g, config));
    CHECK(a.u_orders[1].parts().at({1, 0}).constant_part() == doctest::Approx(7.0));
    CHECK(b.u_orders[1].parts().at({1, 0}).constant_part() == 0.0);
    for (std::size_t m = 2; m < a.u_orders.size(); ++m) {
        CHECK(max_coefficient_difference(a.u_orders[m], b.u_orders[m]) == 0.0);
        CHECK(max_coefficient_difference(a.v_orders[m], b.v_orders[m]) == 0.0);
    }
}
