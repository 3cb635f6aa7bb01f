#pragma once

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "gamma.hpp"

namespace mpqa {

struct SeriesConfig {
    double rel_tol = 1e-15;
    int max_terms = 400;
};

namespace detail {

inline void check_series_config(const SeriesConfig& cfg) {
    if (!(cfg.rel_tol > 0.0))
        throw std::domain_error("SeriesConfig: rel_tol must be > 0");
    if (cfg.max_terms < 10)
        throw std::domain_error("SeriesConfig: max_terms must be >= 10");
}

} // namespace detail

// Ascending series for I_nu(x). All terms are positive, so the running-sum
// stopping test is safe. Term recursion avoids a gamma call per term.
inline double bessel_i_series(double nu, double x, const SeriesConfig& cfg = {}) {
    detail::check_series_config(cfg);
    if (!(nu > -1.0))
        throw std::domain_error("bessel_i_series: requires nu > -1");
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i_series: requires x >= 0");
    if (x == 0.0) {
        if (nu < 0.0)
            throw std::domain_error("bessel_i_series: pole at x = 0 for nu < 0");
        return nu == 0.0 ? 1.0 : 0.0;
    }
    const double half = 0.5 * x;
    double term = std::pow(half, nu) / gamma_positive(nu + 1.0);
    double sum = term;
    const double h2 = half * half;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= h2 / ((k + 1.0) * (k + 1.0 + nu));
        sum += term;
        if (!std::isfinite(sum))
            throw overflow_error("bessel_i_series: sum overflowed");
        if (term <= cfg.rel_tol * sum)
            return sum;
    }
    throw convergence_error("bessel_i_series: max_terms reached before convergence");
}

// Divergent large-x expansion, truncated at n_terms. Intended for
// x >~ 10*max(1, nu^2); never sum past the smallest term.
inline double bessel_i_asymptotic(double nu, double x, int n_terms) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_i_asymptotic: requires x > 0");
    if (n_terms < 1 || n_terms > 10)
        throw std::domain_error("bessel_i_asymptotic: n_terms must be in [1, 10]");
    double s = 1.0;
    double c = 1.0;
    double xp = 1.0;
    for (int m = 1; m < n_terms; ++m) {
        c *= -(4.0 * nu * nu - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m);
        xp *= x;
        s += c / xp;
    }
    const double pre = std::exp(x) / std::sqrt(2.0 * detail::pi * x);
    if (!std::isfinite(pre))
        throw overflow_error("bessel_i_asymptotic: e^x overflowed");
    return pre * s;
}

// I'_nu(x) = I_{nu+1}(x) + (nu/x) I_nu(x)
inline double bessel_i_prime(double nu, double x, const SeriesConfig& cfg = {}) {
    if (!(nu >= 0.0))
        throw std::domain_error("bessel_i_prime: requires nu >= 0");
    if (!(x > 0.0))
        throw std::domain_error("bessel_i_prime: requires x > 0");
    return bessel_i_series(nu + 1.0, x, cfg) + (nu / x) * bessel_i_series(nu, x, cfg);
}

} // namespace mpqa
