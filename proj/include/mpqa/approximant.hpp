#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "errors.hpp"
#include "gamma.hpp"

namespace mpqa {

// Six-parameter approximant of I_nu on [0, 1]-orders:
//   (x/2)^nu [(p0 + p2 x^2) cosh x + (p1 + p3 x^2) sinh(x)/x]
//   / [Gamma(nu+1) (1 + lambda^2 x^2)^beta (1 + q x^2)],  beta = nu/2 + 1/4.
// residual_x4 / residual_x6 are the relative residuals of the two spare
// matching conditions (x^4 and truncated x^6) left over after q, p2, p3 and
// the 2x2 solve fix all six parameters.
struct ApproximantParams {
    double nu = 0.0;
    double lambda = 0.0;
    double beta = 0.0;
    double q = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double residual_x4 = 0.0;
    double residual_x6 = 0.0;
    std::string method; // "closed-form" or "least-squares"
};

inline double f_factor(double lambda, double nu) {
    if (!(lambda > 0.0))
        throw std::domain_error("f_factor: requires lambda > 0");
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("f_factor: requires nu in [0, 1]");
    return std::pow(2.0, 1.0 + nu) * std::pow(lambda, nu + 0.5) *
           gamma_positive(1.0 + nu) / detail::sqrt_2pi;
}

// Closed-form q(lambda, nu). May be negative; callers must check the sign.
inline double q_closed_form(double lambda, double nu) {
    if (!(lambda > 0.0))
        throw std::domain_error("q_closed_form: requires lambda > 0");
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("q_closed_form: requires nu in [0, 1]");
    const double b = 0.5 * nu + 0.25;
    const double l2 = lambda * lambda;
    const double l4 = l2 * l2;
    const double num =
        std::sqrt(detail::pi / 2.0) *
        (-4.0 * nu * nu - 240.0 * (b - 1.0) * b * l4 * (nu + 1.0) * (nu + 2.0) +
         24.0 * b * l2 * (nu + 2.0) * (2.0 * nu - 3.0) + 1.0);
    const double den =
        4.0 * (std::pow(2.0, nu) * (4.0 * nu * nu - 49.0) * std::pow(lambda, nu + 0.5) *
                   gamma_positive(nu + 3.0) +
               3.0 * detail::sqrt_2pi * (nu + 2.0) *
                   (20.0 * b * l2 * (nu + 1.0) - 2.0 * nu + 3.0));
    if (std::abs(den) < 1e-14)
        throw singularity_error("q_closed_form: denominator vanishes at this (lambda, nu)");
    return num / den;
}

inline void validate_params(const ApproximantParams& p) {
    if (!(p.lambda > 0.0))
        throw std::domain_error("ApproximantParams: lambda must be > 0");
    if (!(p.q > 0.0))
        throw std::domain_error("ApproximantParams: q must be > 0");
    if (p.beta != 0.5 * p.nu + 0.25)
        throw std::domain_error("ApproximantParams: beta != nu/2 + 1/4");
    if (std::abs(p.p0 + p.p1 - 1.0) > 1e-12)
        throw std::domain_error("ApproximantParams: p0 + p1 != 1");
    const double f = f_factor(p.lambda, p.nu);
    if (std::abs(p.p2 - p.q * f) > 1e-12 * std::abs(p.q * f))
        throw std::domain_error("ApproximantParams: p2 != q*f");
    const double p3_ref = (1.0 - 4.0 * p.nu * p.nu) / 8.0 * f * p.q;
    if (std::abs(p.p3 - p3_ref) > 1e-12 * std::abs(p3_ref))
        throw std::domain_error("ApproximantParams: p3 != (1-4nu^2)/8 * f * q");
}

// Solve order: q from its closed form, then p2 and p3, then (p0, p1) from the
// x^0 and x^2 conditions. The x^4 and truncated-x^6 conditions are evaluated
// as residuals (relative to the largest term in each); if either exceeds 1e-8
// the (p0, p1) pair is re-solved in the least-squares sense over all four
// conditions with q fixed, and the result is flagged "least-squares".
inline ApproximantParams solve_params(double lambda, double nu) {
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("solve_params: requires nu in [0, 1]");
    const double b = 0.5 * nu + 0.25;
    const double q = q_closed_form(lambda, nu);
    if (!(q > 0.0))
        throw defect_error("solve_params: q <= 0, approximant denominator would vanish");
    const double f = f_factor(lambda, nu);
    const double p2 = q * f;
    const double p3 = (1.0 - 4.0 * nu * nu) / 8.0 * f * q;
    const double l2 = lambda * lambda;
    const double l4 = l2 * l2;
    const double s1 = 1.0 / (4.0 * (1.0 + nu));
    const double s2 = 1.0 / (32.0 * (1.0 + nu) * (2.0 + nu));

    // {p0 + p1 = 1; p0/2 + p1/6 = r}; determinant 1/3 exactly
    const double r = q + b * l2 + s1 - p2 - p3;
    const double det = 0.5 - 1.0 / 6.0;
    if (std::abs(det) < 1e-300)
        throw singular_system_error("solve_params: degenerate 2x2 system");
    double p0 = (r - 1.0 / 6.0) / det;
    double p1 = 1.0 - p0;

    const double rhs4 = (b - 1.0) * b * l4 / 2.0 + q * (b * l2 + s1) + b * l2 * s1 + s2;
    const double rhs6 = q * ((b - 1.0) * b * l4 / 2.0 + b * l2 / (4.0 * (nu + 1.0)) + s2) +
                        (b - 1.0) * b * l4 / (8.0 * (nu + 1.0)) +
                        b * l2 / (32.0 * (nu + 1.0) * (nu + 2.0));

    const auto residuals = [&](double a0, double a1) {
        const double lhs4 = a0 / 24.0 + a1 / 120.0 + p2 / 2.0 + p3 / 6.0;
        double m4 = std::abs(a0 / 24.0);
        for (double t : {std::abs(a1 / 120.0), std::abs(p2 / 2.0), std::abs(p3 / 6.0),
                         std::abs((b - 1.0) * b * l4 / 2.0), std::abs(q * b * l2),
                         std::abs(q * s1), std::abs(b * l2 * s1), std::abs(s2)})
            m4 = std::max(m4, t);
        const double lhs6 = p2 / 24.0 + p3 / 120.0;
        double m6 = std::abs(p2 / 24.0);
        for (double t : {std::abs(p3 / 120.0), std::abs(q * (b - 1.0) * b * l4 / 2.0),
                         std::abs(q * b * l2 / (4.0 * (nu + 1.0))), std::abs(q * s2),
                         std::abs((b - 1.0) * b * l4 / (8.0 * (nu + 1.0))),
                         std::abs(b * l2 / (32.0 * (nu + 1.0) * (nu + 2.0)))})
            m6 = std::max(m6, t);
        return std::array<double, 2>{std::abs(lhs4 - rhs4) / m4, std::abs(lhs6 - rhs6) / m6};
    };

    auto res = residuals(p0, p1);
    std::string method = "closed-form";
    if (res[0] > 1e-8 || res[1] > 1e-8) {
        // least-squares over the four conditions; the x^6 row has zero
        // coefficients on (p0, p1), so it only contributes a constant residual
        const double rows[4][3] = {
            {1.0, 1.0, 1.0},
            {0.5, 1.0 / 6.0, r},
            {1.0 / 24.0, 1.0 / 120.0, rhs4 - p2 / 2.0 - p3 / 6.0},
            {0.0, 0.0, rhs6 - p2 / 24.0 - p3 / 120.0},
        };
        double a00 = 0.0, a01 = 0.0, a11 = 0.0, b0 = 0.0, b1 = 0.0;
        for (const auto& row : rows) {
            a00 += row[0] * row[0];
            a01 += row[0] * row[1];
            a11 += row[1] * row[1];
            b0 += row[0] * row[2];
            b1 += row[1] * row[2];
        }
        const double d = a00 * a11 - a01 * a01;
        if (std::abs(d) < 1e-300)
            throw singular_system_error("solve_params: degenerate least-squares system");
        p0 = (b0 * a11 - b1 * a01) / d;
        p1 = (a00 * b1 - a01 * b0) / d;
        res = residuals(p0, p1);
        method = "least-squares";
    }

    ApproximantParams p;
    p.nu = nu;
    p.lambda = lambda;
    p.beta = b;
    p.q = q;
    p.p0 = p0;
    p.p1 = p1;
    p.p2 = p2;
    p.p3 = p3;
    p.residual_x4 = res[0];
    p.residual_x6 = res[1];
    p.method = method;
    validate_params(p);
    return p;
}

inline double evaluate_approximant(const ApproximantParams& p, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("evaluate_approximant: requires x >= 0");
    if (x == 0.0)
        return p.nu > 0.0 ? 0.0 : p.p0 + p.p1;
    const double x2 = x * x;
    const double den = gamma_positive(p.nu + 1.0) *
                       std::pow(1.0 + p.lambda * p.lambda * x2, p.beta) * (1.0 + p.q * x2);
    if (x < 350.0) {
        const double sinhc = x < 1e-4 ? 1.0 + x2 / 6.0 + x2 * x2 / 120.0 : std::sinh(x) / x;
        const double num = (p.p0 + p.p2 * x2) * std::cosh(x) + (p.p1 + p.p3 * x2) * sinhc;
        return std::pow(0.5 * x, p.nu) * num / den;
    }
    // cosh x and sinh x are both e^x/2 to double precision here; factoring the
    // exponential keeps the finite ratio representable up to the e^x overflow
    const double poly = (p.p0 + p.p2 * x2) + (p.p1 + p.p3 * x2) / x;
    const double ex = std::exp(x);
    if (!std::isfinite(ex))
        throw overflow_error("evaluate_approximant: cosh/sinh overflow");
    const double value = std::pow(0.5 * x, p.nu) * 0.5 * poly / den * ex;
    if (!std::isfinite(value))
        throw overflow_error("evaluate_approximant: result exceeds double range");
    return value;
}

// Even Taylor coefficients c0, c2, ... of the approximant divided by its
// prefactor (x/2)^nu / Gamma(nu+1), from the series products of cosh, sinh/x,
// (1 + lambda^2 x^2)^-beta and 1/(1 + q x^2).
inline std::vector<double> taylor_coeffs_approximant(const ApproximantParams& p, int order) {
    if (order < 0 || order % 2 != 0 || order > 6)
        throw std::domain_error("taylor_coeffs_approximant: order must be even and <= 6");
    const int n = order / 2 + 1;
    static constexpr double fact[8] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0};
    std::vector<double> num(n, 0.0), bin(n, 0.0), geo(n, 0.0);
    for (int k = 0; k < n; ++k) {
        num[k] = p.p0 / fact[2 * k] + p.p1 / fact[2 * k + 1];
        if (k >= 1)
            num[k] += p.p2 / fact[2 * (k - 1)] + p.p3 / fact[2 * (k - 1) + 1];
    }
    bin[0] = 1.0;
    double c = 1.0;
    const double l2 = p.lambda * p.lambda;
    double lp = 1.0;
    for (int k = 1; k < n; ++k) {
        c *= (-p.beta - (k - 1.0)) / k;
        lp *= l2;
        bin[k] = c * lp;
    }
    double qp = 1.0;
    for (int k = 0; k < n; ++k) {
        geo[k] = qp;
        qp *= -p.q;
    }
    const auto mul = [n](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j + i < n; ++j)
                out[i + j] += a[i] * b[j];
        return out;
    };
    return mul(mul(num, bin), geo);
}

} // namespace mpqa
