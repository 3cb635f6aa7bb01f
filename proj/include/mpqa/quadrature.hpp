#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gamma.hpp"

namespace mpqa {

// Gauss-Legendre nodes and weights on [-1, 1]. Newton iteration on the
// three-term recurrence; nodes are symmetric and strictly interior.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1)
        throw std::domain_error("gauss_legendre: requires n >= 1");
    std::vector<double> xs(n), ws(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(detail::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double pk = 1.0, pkm1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double pkm2 = pkm1;
                pkm1 = pk;
                pk = ((2.0 * j + 1.0) * z * pkm1 - j * pkm2) / (j + 1.0);
            }
            pp = n * (z * pk - pkm1) / (z * z - 1.0);
            const double dz = pk / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        xs[i] = -z;
        xs[n - 1 - i] = z;
        ws[i] = ws[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return {std::move(xs), std::move(ws)};
}

} // namespace mpqa
