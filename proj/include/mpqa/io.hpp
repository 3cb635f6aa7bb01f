#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "approximant.hpp"
#include "error_analysis.hpp"
#include "fde.hpp"

namespace mpqa {

// 17 significant digits round-trips a double exactly.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Field names and order are fixed by the CLI schema.
inline nlohmann::ordered_json to_json(const ApproximantParams& p) {
    nlohmann::ordered_json j;
    j["nu"] = p.nu;
    j["lambda"] = p.lambda;
    j["beta"] = p.beta;
    j["q"] = p.q;
    j["p0"] = p.p0;
    j["p1"] = p.p1;
    j["p2"] = p.p2;
    j["p3"] = p.p3;
    j["residual18"] = p.residual_x4;
    j["residual19"] = p.residual_x6;
    j["method"] = p.method;
    return j;
}

inline nlohmann::ordered_json to_json(const FdeConfig& cfg) {
    nlohmann::ordered_json j;
    j["nu_source"] = cfg.nu_source;
    j["alpha"] = cfg.alpha;
    j["lambda_a"] = cfg.lambda_a;
    j["lambda_b"] = cfg.lambda_b;
    return j;
}

inline void write_error_curve_csv(std::ostream& os, const ErrorReport& rep) {
    os << "x,punctual_error\n";
    for (const auto& [x, e] : rep.curve)
        os << fmt17(x) << ',' << fmt17(e) << '\n';
}

inline void write_surface_csv(std::ostream& os, const ErrorSurface& surf) {
    os << "nu,lambda,global_error,admissible\n";
    for (size_t i = 0; i < surf.nu_grid.size(); ++i) {
        for (size_t j = 0; j < surf.lambda_grid.size(); ++j) {
            const double v = surf.values[i][j];
            const bool ok = v != inadmissible_sentinel;
            os << fmt17(surf.nu_grid[i]) << ',' << fmt17(surf.lambda_grid[j]) << ','
               << fmt17(v) << ',' << (ok ? '1' : '0') << '\n';
        }
    }
}

inline void write_optima_csv(std::ostream& os, const std::vector<NuOptimum>& optima) {
    os << "nu,lambda_min,error_min\n";
    for (const auto& o : optima)
        os << fmt17(o.nu) << ',' << fmt17(o.lambda_min) << ',' << fmt17(o.error_min) << '\n';
}

inline void write_fde_csv(std::ostream& os, const std::vector<FdeVerificationRecord>& recs) {
    os << "x,exact_magnitude,approx_magnitude,product_rel_error,caputo_residual\n";
    for (const auto& r : recs)
        os << fmt17(r.x) << ',' << fmt17(r.exact_magnitude) << ',' << fmt17(r.approx_magnitude)
           << ',' << fmt17(r.product_rel_error) << ',' << fmt17(r.caputo_residual) << '\n';
}

} // namespace mpqa
