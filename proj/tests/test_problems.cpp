#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psiham/problems.hpp"
#include "psiham/special.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace psiham;

TEST_CASE("problem construction and validation") {
    CHECK_NOTHROW(ProblemSpec::tube_pressure(0.5, PsiSpec::logarithm(), 1.0, 1.0, 1.0));
    CHECK_NOTHROW(ProblemSpec::tube(0.75, PsiSpec::logarithm(), 1.0, 1.0));
    CHECK_NOTHROW(ProblemSpec::planar(0.7, PsiSpec::logarithm(), 1.0, 1.0, 0.0));

    CHECK_THROWS_AS(ProblemSpec::tube(0.5, PsiSpec::logarithm(), 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ProblemSpec::tube(0.5, PsiSpec::logarithm(), -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(ProblemSpec::tube(0.5, PsiSpec::identity(), 0.0, -1.0), ParameterError);
    CHECK_THROWS_AS(ProblemSpec::planar(0.5, PsiSpec::identity(), 0.0, 0.0, 0.0),
                    ParameterError);
    CHECK_THROWS_AS(ProblemSpec::tube(1.5, PsiSpec::identity(), 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ProblemSpec::tube(0.0, PsiSpec::identity(), 0.0, 1.0), DomainError);

    const auto tube = ProblemSpec::tube(0.5, PsiSpec::identity(), 0.0, 2.0);
    CHECK(tube.nu() == 2.0);
    CHECK(tube.pressure() == 0.0);  // unforced variant
    CHECK_THROWS_AS(tube.rho0(), ParameterError);
    CHECK_THROWS_AS(tube.g(), ParameterError);

    const auto planar = ProblemSpec::planar(0.5, PsiSpec::identity(), 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(planar.nu(), ParameterError);
    CHECK_THROWS_AS(planar.initial_cylindrical(), VariantError);
    CHECK_THROWS_AS(tube.initial_planar(), VariantError);

    CHECK(app_from_name("tube-pressure") == AppKind::TubePressure);
    CHECK_THROWS_AS(app_from_name("bogus"), ParameterError);
}

TEST_CASE("tube series coefficients follow the squared double factorial") {
    CHECK(tube_series_coefficient(1) == 1.0);  // (-1)!! = 1
    CHECK(tube_series_coefficient(2) == 1.0);  // 1!! = 1
    CHECK(tube_series_coefficient(3) == 9.0);
    CHECK(tube_series_coefficient(4) == 225.0);
    const auto oracle = oracles::tube_series_coefficients_bruteforce(6);
    for (int k = 1; k <= 6; ++k)
        CHECK(tube_series_coefficient(k) ==
              doctest::Approx(static_cast<double>(oracle[static_cast<std::size_t>(k - 1)])));
    CHECK_THROWS_AS(tube_series_coefficient(0), DomainError);
}

TEST_CASE("exact solution reference values") {
    // log rescaling, alpha = 1/2, r = 0.1, t = e: 0.99 - 3 / Gamma(1.5)
    const auto p1 = ProblemSpec::tube_pressure(0.5, PsiSpec::logarithm(), 1.0, 1.0, 1.0);
    const double expected = 0.99 - 3.0 / gamma_eval(1.5);
    CHECK(exact_solution(p1, 0.1, std::exp(1.0)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(-2.395137).epsilon(1e-6));

    // coupled system at t = a: the initial data, since E_alpha(0) = 1
    const auto p3 = ProblemSpec::planar(0.8, PsiSpec::identity(), 0.0, 1.0, 0.0);
    const auto [u0, v0] = exact_solution(p3, M_PI / 4.0, M_PI / 4.0, 0.0);
    CHECK(u0 == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(v0 == doctest::Approx(1.0).epsilon(1e-14));

    // classical limit: E_1(-2 rho0 t) = exp(-2 rho0 t)
    const auto classical = ProblemSpec::planar(1.0, PsiSpec::identity(), 0.0, 1.0, 0.0);
    const auto [uc, vc] = exact_solution(classical, M_PI / 2.0, 0.0, 0.5);
    CHECK(uc == doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
    CHECK(vc == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("special-case collapse to the hand-coded forms") {
    // identity rescaling, a = 0, nu = 1: 1 - r^2 + (P-4) t^alpha / Gamma(alpha+1)
    for (double alpha : {0.5, 0.8, 1.0}) {
        const auto p = ProblemSpec::tube_pressure(alpha, PsiSpec::identity(), 0.0, 1.0, 1.0);
        for (double r : {0.1, 0.5, 0.9}) {
            for (double t : {0.0, 0.5, 2.0}) {
                const double hand =
                    1.0 - r * r + (1.0 - 4.0) * std::pow(t, alpha) / gamma_eval(alpha + 1.0);
                CHECK(std::fabs(exact_solution(p, r, t) - hand) <= 1e-12 * std::max(1.0, std::fabs(hand)));
            }
        }
        // log rescaling, a > 0: powers of ln(t/a)
        const auto pl = ProblemSpec::tube_pressure(alpha, PsiSpec::logarithm(), 1.0, 1.0, 1.0);
        for (double t : {1.0, 2.0, 5.0}) {
            const double hand =
                1.0 - 0.01 + (1.0 - 4.0) * std::pow(std::log(t), alpha) / gamma_eval(alpha + 1.0);
            CHECK(std::fabs(exact_solution(pl, 0.1, t) - hand) <= 1e-12 * std::max(1.0, std::fabs(hand)));
        }
    }

    // tube problem: identity and log special cases of the series
    for (double alpha : {0.5, 0.75}) {
        const auto p_id = ProblemSpec::tube(alpha, PsiSpec::identity(), 0.0, 1.0);
        const auto p_lg = ProblemSpec::tube(alpha, PsiSpec::logarithm(), 1.0, 1.0);
        for (double r : {0.5, 1.0}) {
            for (double t_id : {0.1, 0.6}) {
                double hand = r;
                for (int k = 1; k <= 4; ++k)
                    hand += tube_series_coefficient(k) * std::pow(r, 1 - 2 * k) *
                            std::pow(t_id, k * alpha) / gamma_eval(k * alpha + 1.0);
                CHECK(std::fabs(exact_solution(p_id, r, t_id, 4) - hand) <=
                      1e-12 * std::max(1.0, std::fabs(hand)));
                // matched log point: psi(t)-psi(a) equal by construction
                const double t_lg = std::exp(t_id);
                CHECK(std::fabs(exact_solution(p_lg, r, t_lg, 4) - hand) <=
                      1e-12 * std::max(1.0, std::fabs(hand)));
            }
        }
    }
}

TEST_CASE("coupled solution symmetry and initial conditions") {
    const auto p = ProblemSpec::planar(0.6, PsiSpec::logarithm(), 1.0, 1.0, 0.0);
    for (double x : {0.0, 1.1, 2.9}) {
        for (double t : {1.0, 1.5, 3.0}) {
            const auto [u, v] = exact_solution(p, x, 0.2, t);
            CHECK(u + v == doctest::Approx(0.0).epsilon(1e-14));
        }
    }
    // initial conditions hold exactly at t = a
    const auto tube = ProblemSpec::tube(0.5, PsiSpec::logarithm(), 1.0, 1.0);
    for (double r : {0.3, 1.0, 2.0})
        CHECK(exact_solution(tube, r, 1.0) == r);
    const auto forced = ProblemSpec::planar(0.6, PsiSpec::logarithm(), 1.0, 1.0, 2.5);
    const auto [ui, vi] = exact_solution(forced, 0.7, 0.2, 1.0);
    CHECK(ui == -std::sin(0.7 + 0.2));
    CHECK(vi == std::sin(0.7 + 0.2));
}

TEST_CASE("singular axis and the time domain are rejected") {
    const auto tube = ProblemSpec::tube(0.5, PsiSpec::identity(), 0.0, 1.0);
    CHECK_THROWS_AS(exact_solution(tube, 0.0, 1.0), SingularPointError);
    CHECK_THROWS_AS(exact_solution(tube, 0.5, -1.0), DomainError);
    CHECK_THROWS_AS(exact_solution(tube, 0.5, 1.0, 0), DomainError);
    const auto planar = ProblemSpec::planar(0.5, PsiSpec::identity(), 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(exact_solution(planar, 0.1, 0.2, -1.0), DomainError);
    // pressure-driven tube is regular on the axis
    const auto tp = ProblemSpec::tube_pressure(0.5, PsiSpec::identity(), 0.0, 1.0, 1.0);
    CHECK(exact_solution(tp, 0.0, 0.0) == 1.0);
}
