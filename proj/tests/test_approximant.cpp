#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include <mpqa/approximant.hpp>
#include <mpqa/bessel.hpp>
#include <mpqa/error_analysis.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
}

TEST_CASE("f_factor closed form") {
    // references computed at 40 digits with an independent implementation
    REQUIRE_THAT(mpqa::f_factor(0.236, 0.1), WithinRel(0.34208256250452658614, 1e-13));
    REQUIRE_THAT(mpqa::f_factor(0.236, 0.6), WithinRel(0.22073097396694346139, 1e-13));
    for (double lam : {0.1, 0.236, 0.4}) {
        const double collapsed = 2.0 * std::sqrt(lam) / std::sqrt(2.0 * pi);
        REQUIRE_THAT(mpqa::f_factor(lam, 0.0), WithinRel(collapsed, 1e-14));
    }
    REQUIRE_THROWS_AS(mpqa::f_factor(0.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::f_factor(-0.2, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::f_factor(0.2, 1.5), std::domain_error);
}

TEST_CASE("q closed form reference values and sign structure") {
    REQUIRE_THAT(mpqa::q_closed_form(0.236, 0.6), WithinRel(2.5982317049222496124, 1e-13));
    REQUIRE_THAT(mpqa::q_closed_form(0.26092, 0.1), WithinRel(2.3191618318894714402, 1e-13));
    // the order-0.1 approximant is NOT admissible at lambda = 0.236: that
    // lambda is the optimum of the order-0.7 source, not of its components
    REQUIRE_THAT(mpqa::q_closed_form(0.236, 0.1), WithinRel(-0.21194300805286562076, 1e-13));
    // banded admissibility in lambda at nu = 0.1
    REQUIRE(mpqa::q_closed_form(0.05, 0.1) > 0.0);
    REQUIRE(mpqa::q_closed_form(0.2, 0.1) < 0.0);
    REQUIRE(mpqa::q_closed_form(0.3, 0.1) > 0.0);
    REQUIRE(mpqa::q_closed_form(0.5, 0.1) > 0.0);
}

TEST_CASE("q closed form has a finite nu -> 0 limit") {
    const double q8 = mpqa::q_closed_form(0.265, 1e-8);
    const double q6 = mpqa::q_closed_form(0.265, 1e-6);
    REQUIRE(std::isfinite(q8));
    // the limit is steep (dq/dnu ~ -500 here); 1e-4 covers the drift
    REQUIRE(std::abs(q8 - q6) / std::abs(q8) <= 1e-4);
    REQUIRE_THROWS_AS(mpqa::q_closed_form(0.265, -0.1), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::q_closed_form(0.265, 1.1), std::domain_error);
}

TEST_CASE("q closed form pole handling") {
    // The lower band edge at nu = 0.1 (lambda ~ 0.151) is a numerator zero; the
    // pole sits near lambda ~ 0.258 where the denominator crosses zero and q
    // jumps from small negative values to large positive ones. Bisect the
    // denominator root and check the singularity gate fires exactly when the
    // denominator magnitude is below its threshold; q blows up next to it.
    const double nu = 0.1;
    const double b = 0.5 * nu + 0.25;
    const auto den_of = [&](double lambda) { // mirrors the production formula
        const double l2 = lambda * lambda;
        return 4.0 * (std::pow(2.0, nu) * (4.0 * nu * nu - 49.0) *
                          std::pow(lambda, nu + 0.5) * mpqa::gamma_positive(nu + 3.0) +
                      3.0 * mpqa::detail::sqrt_2pi * (nu + 2.0) *
                          (20.0 * b * l2 * (nu + 1.0) - 2.0 * nu + 3.0));
    };
    double lo = 0.23, hi = 0.3;
    REQUIRE(den_of(lo) > 0.0);
    REQUIRE(den_of(hi) < 0.0);
    while (std::nextafter(lo, hi) < hi) {
        const double mid = 0.5 * (lo + hi);
        (den_of(mid) > 0.0 ? lo : hi) = mid;
    }
    double max_abs_q = 0.0;
    double lam = lo;
    for (int i = 0; i < 100; ++i)
        lam = std::nextafter(lam, 0.0);
    for (int i = 0; i < 200; ++i) {
        const bool gate = std::abs(den_of(lam)) < 1e-14;
        try {
            max_abs_q = std::max(max_abs_q, std::abs(mpqa::q_closed_form(lam, nu)));
            REQUIRE_FALSE(gate);
        } catch (const mpqa::singularity_error&) {
            REQUIRE(gate);
        }
        lam = std::nextafter(lam, 1.0);
    }
    REQUIRE(max_abs_q > 1e8);
}

TEST_CASE("solve_params reproduces the independently solved six-tuple") {
    // (0.236, 0.6): reference from a 40-digit solve of the matching system
    const auto p = mpqa::solve_params(0.236, 0.6);
    REQUIRE_THAT(p.beta, WithinAbs(0.55, 0.0));
    REQUIRE_THAT(p.q, WithinRel(2.5982317049222496124, 1e-10));
    REQUIRE_THAT(p.p0, WithinRel(6.2294420557540894293, 1e-10));
    REQUIRE_THAT(p.p1, WithinRel(-5.2294420557540894293, 1e-10));
    REQUIRE_THAT(p.p2, WithinRel(0.57351021481928020455, 1e-10));
    REQUIRE_THAT(p.p3, WithinRel(-0.03154306181506040361, 1e-10));
}

TEST_CASE("solve_params invariants hold across the admissible region") {
    for (double nu : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
        const double lam = mpqa::lambda_star(nu);
        const auto p = mpqa::solve_params(lam, nu);
        REQUIRE(p.beta == 0.5 * nu + 0.25);
        REQUIRE(p.q > 0.0);
        REQUIRE_THAT(p.p0 + p.p1, WithinAbs(1.0, 1e-12));
        // construction identities, exact as computed
        REQUIRE(p.p2 / (mpqa::f_factor(lam, nu) * p.q) == 1.0);
        REQUIRE_THAT(p.p3 / (mpqa::f_factor(lam, nu) * p.q),
                     WithinRel((1.0 - 4.0 * nu * nu) / 8.0, 1e-14));
    }
}

TEST_CASE("solve_params diagnostics expose the inconsistent sixth-order condition") {
    for (double nu : {0.1, 0.45, 0.6, 0.9}) {
        const auto p = mpqa::solve_params(mpqa::lambda_star(nu), nu);
        // the x^4 condition is satisfied to rounding by the closed-form q...
        REQUIRE(p.residual_x4 <= 1e-12);
        // ...while the truncated x^6 condition is genuinely inconsistent, so
        // the least-squares fallback always engages
        REQUIRE(p.residual_x6 > 1e-8);
        REQUIRE(p.residual_x6 < 2.0);
        REQUIRE(p.method == "least-squares");
    }
}

TEST_CASE("least-squares fallback coincides with the two-equation solve") {
    // the x^6 row has zero coefficients on (p0, p1) and the first three
    // conditions are mutually consistent, so the fallback cannot move p0
    for (double nu : {0.2, 0.6, 1.0}) {
        const double lam = mpqa::lambda_star(nu);
        const auto p = mpqa::solve_params(lam, nu);
        const double s1 = 1.0 / (4.0 * (1.0 + nu));
        const double r = p.q + p.beta * lam * lam + s1 - p.p2 - p.p3;
        const double p0_direct = (r - 1.0 / 6.0) / (0.5 - 1.0 / 6.0);
        REQUIRE_THAT(p.p0, WithinRel(p0_direct, 1e-12));
    }
}

TEST_CASE("solve_params rejects inadmissible and out-of-domain input") {
    REQUIRE_THROWS_AS(mpqa::solve_params(0.236, 0.1), mpqa::defect_error);
    REQUIRE_THROWS_AS(mpqa::solve_params(0.2, 0.1), mpqa::defect_error);
    REQUIRE_THROWS_AS(mpqa::solve_params(0.236, 1.5), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::solve_params(-0.1, 0.5), std::domain_error);
}

TEST_CASE("validate_params flags tampered parameter sets") {
    auto p = mpqa::solve_params(0.236, 0.6);
    auto bad = p;
    bad.p0 += 1e-6;
    REQUIRE_THROWS_AS(mpqa::validate_params(bad), std::domain_error);
    bad = p;
    bad.beta = 0.5;
    REQUIRE_THROWS_AS(mpqa::validate_params(bad), std::domain_error);
    bad = p;
    bad.q = -bad.q;
    REQUIRE_THROWS_AS(mpqa::validate_params(bad), std::domain_error);
    bad = p;
    bad.p2 *= 1.0 + 1e-9;
    REQUIRE_THROWS_AS(mpqa::validate_params(bad), std::domain_error);
    REQUIRE_NOTHROW(mpqa::validate_params(p));
}

TEST_CASE("approximant evaluation near zero") {
    const auto p06 = mpqa::solve_params(0.236, 0.6);
    REQUIRE(mpqa::evaluate_approximant(p06, 0.0) == 0.0);
    const auto p0 = mpqa::solve_params(mpqa::lambda_star(0.0), 0.0);
    REQUIRE_THAT(mpqa::evaluate_approximant(p0, 0.0), WithinAbs(1.0, 1e-12));
    // leading term of the shared series prefactor
    for (const auto& p : {p06, mpqa::solve_params(mpqa::lambda_star(0.1), 0.1)}) {
        const double lead =
            std::pow(0.5e-6, p.nu) / mpqa::gamma_positive(p.nu + 1.0);
        REQUIRE_THAT(mpqa::evaluate_approximant(p, 1e-6), WithinRel(lead, 1e-10));
    }
    REQUIRE_THROWS_AS(mpqa::evaluate_approximant(p06, -1.0), std::domain_error);
}

TEST_CASE("sinh(x)/x branch switch is seamless") {
    const auto p = mpqa::solve_params(0.236, 0.6);
    const double below = mpqa::evaluate_approximant(p, 1e-4 * (1.0 - 1e-9));
    const double above = mpqa::evaluate_approximant(p, 1e-4 * (1.0 + 1e-9));
    REQUIRE_THAT(below, WithinRel(above, 1e-8));
}

TEST_CASE("approximant tracks the reference at interior points") {
    const auto p06 = mpqa::solve_params(0.236, 0.6);
    const double r06 = mpqa::evaluate_approximant(p06, 5.0) / mpqa::bessel_i_series(0.6, 5.0);
    REQUIRE(std::abs(r06 - 1.0) <= 0.0011);
    const auto p01 = mpqa::solve_params(mpqa::lambda_star(0.1), 0.1);
    const double r01 = mpqa::evaluate_approximant(p01, 5.0) / mpqa::bessel_i_series(0.1, 5.0);
    REQUIRE(std::abs(r01 - 1.0) <= 0.0013);
}

TEST_CASE("approximant matches the asymptotic regime") {
    for (double nu : {0.1, 0.6}) {
        const auto p = mpqa::solve_params(mpqa::lambda_star(nu), nu);
        const double r200 =
            mpqa::evaluate_approximant(p, 200.0) / mpqa::bessel_i_asymptotic(nu, 200.0, 2);
        REQUIRE(std::abs(r200 - 1.0) <= 1e-3);
        // survives past the naive numerator overflow point
        const double r700 =
            mpqa::evaluate_approximant(p, 700.0) / mpqa::bessel_i_asymptotic(nu, 700.0, 2);
        REQUIRE(std::abs(r700 - 1.0) <= 1e-3);
    }
    const auto p = mpqa::solve_params(0.236, 0.6);
    REQUIRE_THROWS_AS(mpqa::evaluate_approximant(p, 710.0), mpqa::overflow_error);
}

TEST_CASE("approximant is positive with a defect-free denominator") {
    for (double nu : {0.0, 0.5, 1.0}) {
        const auto p = mpqa::solve_params(mpqa::lambda_star(nu), nu);
        for (int i = 1; i <= 10000; ++i) {
            const double x = 100.0 * i / 10000.0;
            const double den = std::pow(1.0 + p.lambda * p.lambda * x * x, p.beta) *
                               (1.0 + p.q * x * x);
            REQUIRE(den >= 1.0);
        }
        for (int i = 1; i <= 200; ++i)
            REQUIRE(mpqa::evaluate_approximant(p, i * 0.5) > 0.0);
    }
}

TEST_CASE("taylor coefficients match the exact series") {
    for (double nu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto p = mpqa::solve_params(mpqa::lambda_star(nu), nu);
        const auto c = mpqa::taylor_coeffs_approximant(p, 6);
        REQUIRE(c.size() == 4);
        REQUIRE_THAT(c[0], WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(c[1], WithinRel(1.0 / (4.0 * (1.0 + nu)), 1e-10));
        // holds because the closed-form q satisfies the x^4 condition exactly
        REQUIRE_THAT(c[2], WithinRel(1.0 / (32.0 * (1.0 + nu) * (2.0 + nu)), 1e-8));
        REQUIRE(std::isfinite(c[3]));
    }
    const auto p = mpqa::solve_params(0.236, 0.6);
    REQUIRE(mpqa::taylor_coeffs_approximant(p, 0).size() == 1);
    REQUIRE_THROWS_AS(mpqa::taylor_coeffs_approximant(p, 3), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::taylor_coeffs_approximant(p, 8), std::domain_error);
    REQUIRE_THROWS_AS(mpqa::taylor_coeffs_approximant(p, -2), std::domain_error);
}
