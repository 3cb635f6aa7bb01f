#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "approximant.hpp"
#include "bessel.hpp"
#include "errors.hpp"

namespace mpqa {

struct ErrorReport {
    double nu = 0.0;
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;
    int grid_points = 0;
    double max_error = 0.0;
    double argmax_x = 0.0;
    std::vector<std::pair<double, double>> curve; // (x, punctual_error) on the grid
};

struct NuOptimum {
    double nu = 0.0;
    double lambda_min = 0.0;
    double error_min = 0.0;
};

struct ErrorSurface {
    std::vector<double> lambda_grid;
    std::vector<double> nu_grid;
    std::vector<std::vector<double>> values; // values[i][j]: nu_grid[i], lambda_grid[j]
    std::vector<NuOptimum> per_nu_optima;
};

// Inadmissible cells in ErrorSurface::values and optima of all-inadmissible
// rows carry this sentinel; real errors are always >= 0.
inline constexpr double inadmissible_sentinel = -1.0;

// |I - approx| / I; at x = 0 both sides share the (x/2)^nu/Gamma(nu+1)
// prefactor, so the limit is |1 - (p0 + p1)|.
inline double punctual_error(double nu, const ApproximantParams& params, double x,
                             const SeriesConfig& cfg = {}) {
    if (!(x >= 0.0))
        throw std::domain_error("punctual_error: requires x >= 0");
    if (x == 0.0)
        return std::abs(1.0 - (params.p0 + params.p1));
    const double ref = bessel_i_series(nu, x, cfg);
    return std::abs(ref - evaluate_approximant(params, x)) / ref;
}

namespace detail {

inline constexpr double golden = 0.61803398874989484820458683436563811772;

// Golden-section maximization; returns the best probe seen, which can only
// improve on the bracket's initial interior value.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
    double c = hi - golden * (hi - lo);
    double d = lo + golden * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    double best_x = fc >= fd ? c : d;
    double best_f = fc >= fd ? fc : fd;
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - golden * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + golden * (hi - lo);
            fd = f(d);
        }
        if (fc > best_f) {
            best_f = fc;
            best_x = c;
        }
        if (fd > best_f) {
            best_f = fd;
            best_x = d;
        }
    }
    return {best_x, best_f};
}

// Minimization twin; ties prefer the smaller abscissa.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
    double c = hi - golden * (hi - lo);
    double d = lo + golden * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    double best_x = fc <= fd ? c : d;
    double best_f = fc <= fd ? fc : fd;
    while (hi - lo > tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - golden * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + golden * (hi - lo);
            fd = f(d);
        }
        if (fc < best_f || (fc == best_f && c < best_x)) {
            best_f = fc;
            best_x = c;
        }
        if (fd < best_f || (fd == best_f && d < best_x)) {
            best_f = fd;
            best_x = d;
        }
    }
    return {best_x, best_f};
}

} // namespace detail

// Uniform grid of the punctual error over [a, b], then golden-section
// refinement of every local-maximum bracket down to dx <= 1e-6 (b - a).
// max_error dominates every grid value by construction.
inline ErrorReport global_error(double nu, double lambda, double a, double b,
                                int grid_points, const SeriesConfig& cfg = {}) {
    if (!(a >= 0.0 && a < b))
        throw std::domain_error("global_error: requires 0 <= a < b");
    if (grid_points < 64)
        throw std::domain_error("global_error: grid_points must be >= 64");
    const ApproximantParams params = solve_params(lambda, nu);

    ErrorReport rep;
    rep.nu = nu;
    rep.lambda = lambda;
    rep.a = a;
    rep.b = b;
    rep.grid_points = grid_points;
    rep.curve.reserve(static_cast<size_t>(grid_points));

    const auto eps = [&](double x) { return punctual_error(nu, params, x, cfg); };
    const int n = grid_points;
    for (int i = 0; i < n; ++i) {
        const double x = i == n - 1 ? b : a + (b - a) * i / (n - 1);
        const double e = eps(x);
        rep.curve.emplace_back(x, e);
        if (e > rep.max_error) {
            rep.max_error = e;
            rep.argmax_x = x;
        }
    }
    const double tol = 1e-6 * (b - a);
    const auto refine = [&](double lo, double hi) {
        const auto [x, e] = detail::golden_max(eps, lo, hi, tol);
        if (e > rep.max_error) {
            rep.max_error = e;
            rep.argmax_x = x;
        }
    };
    for (int i = 0; i < n; ++i) {
        const double e = rep.curve[i].second;
        const bool left_ok = i == 0 || rep.curve[i - 1].second <= e;
        const bool right_ok = i == n - 1 || rep.curve[i + 1].second <= e;
        if (left_ok && right_ok)
            refine(rep.curve[std::max(i - 1, 0)].first, rep.curve[std::min(i + 1, n - 1)].first);
    }
    return rep;
}

// 0.265 - nu/24.5: linear model of the per-order optimal lambda.
inline double lambda_star(double nu) {
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::domain_error("lambda_star: requires nu in [0, 1]");
    return 0.265 - nu / 24.5;
}

// Coarse scan over admissible lambda, then golden-section refinement of the
// best bracket to d(lambda) <= 1e-4. Inadmissible probes count as +inf; ties
// resolve to the smallest lambda.
inline std::pair<double, double> optimize_lambda(double nu, double lo, double hi,
                                                 int coarse, double a, double b) {
    if (!(lo > 0.0 && lo < hi))
        throw std::domain_error("optimize_lambda: requires 0 < lo < hi");
    if (coarse < 32)
        throw std::domain_error("optimize_lambda: coarse must be >= 32");
    constexpr int grid_points = 256;
    const auto err_at = [&](double lam) {
        try {
            return global_error(nu, lam, a, b, grid_points).max_error;
        } catch (const inadmissible_error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::vector<double> lams(static_cast<size_t>(coarse));
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int j = 0; j < coarse; ++j) {
        const double lam = j == coarse - 1 ? hi : lo + (hi - lo) * j / (coarse - 1);
        lams[static_cast<size_t>(j)] = lam;
        const double v = err_at(lam);
        if (v < best_val) {
            best_val = v;
            best = j;
        }
    }
    if (best < 0)
        throw no_admissible_lambda_error("optimize_lambda: q <= 0 across the whole range");
    const double blo = lams[static_cast<size_t>(std::max(best - 1, 0))];
    const double bhi = lams[static_cast<size_t>(std::min(best + 1, coarse - 1))];
    auto [lam_min, err_min] = detail::golden_min(err_at, blo, bhi, 1e-4);
    if (best_val < err_min || (best_val == err_min && lams[static_cast<size_t>(best)] < lam_min)) {
        lam_min = lams[static_cast<size_t>(best)];
        err_min = best_val;
    }
    return {lam_min, err_min};
}

// Row-major (nu outer, lambda inner) surface of global errors; inadmissible
// cells carry the sentinel, never NaN. Per-nu optima are row-wise grid minima.
inline ErrorSurface sweep_error_surface(const std::vector<double>& nu_grid,
                                        const std::vector<double>& lambda_grid,
                                        double a, double b, int grid_points) {
    if (nu_grid.empty() || lambda_grid.empty())
        throw std::domain_error("sweep_error_surface: grids must be nonempty");
    for (size_t i = 1; i < nu_grid.size(); ++i)
        if (!(nu_grid[i] > nu_grid[i - 1]))
            throw std::domain_error("sweep_error_surface: nu_grid must be ascending");
    for (size_t j = 1; j < lambda_grid.size(); ++j)
        if (!(lambda_grid[j] > lambda_grid[j - 1]))
            throw std::domain_error("sweep_error_surface: lambda_grid must be ascending");

    ErrorSurface surf;
    surf.nu_grid = nu_grid;
    surf.lambda_grid = lambda_grid;
    surf.values.assign(nu_grid.size(),
                       std::vector<double>(lambda_grid.size(), inadmissible_sentinel));
    surf.per_nu_optima.reserve(nu_grid.size());
    for (size_t i = 0; i < nu_grid.size(); ++i) {
        NuOptimum opt{nu_grid[i], inadmissible_sentinel, inadmissible_sentinel};
        bool any = false;
        for (size_t j = 0; j < lambda_grid.size(); ++j) {
            double v;
            try {
                v = global_error(nu_grid[i], lambda_grid[j], a, b, grid_points).max_error;
            } catch (const inadmissible_error&) {
                continue;
            }
            surf.values[i][j] = v;
            if (!any || v < opt.error_min) {
                opt.lambda_min = lambda_grid[j];
                opt.error_min = v;
                any = true;
            }
        }
        surf.per_nu_optima.push_back(opt);
    }
    return surf;
}

// Sum over the two component orders nu/2 +- 1/4 of |1 - p2/(f q)| at each
// order's lambda_star. Zero in exact arithmetic since p2 = q f by
// construction; measures accumulated rounding only.
inline double asymptotic_residual(double nu_source) {
    const double lo_order = 0.5 * nu_source - 0.25;
    const double hi_order = 0.5 * nu_source + 0.25;
    if (!(lo_order >= 0.0 && hi_order <= 1.0))
        throw std::domain_error("asymptotic_residual: component orders must lie in [0, 1]");
    double sum = 0.0;
    for (double order : {lo_order, hi_order}) {
        const double lam = lambda_star(order);
        const ApproximantParams p = solve_params(lam, order);
        sum += std::abs(1.0 - p.p2 / (f_factor(lam, order) * p.q));
    }
    return sum;
}

} // namespace mpqa
