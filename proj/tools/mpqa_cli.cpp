// Command-line surface over the approximant library. Emits JSON for
// parameter objects and CSV for curves/surfaces; all numeric output uses 17
// significant digits so identical invocations are byte-identical.
//
// Exit codes: 0 success, 2 usage error, 3 inadmissible parameters, 4 numeric
// failure. Error paths print one line to stderr and nothing to stdout.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mpqa/mpqa.hpp>

namespace {

struct UsageError {
    std::string msg;
};

void check(bool ok, const std::string& msg) {
    if (!ok)
        throw UsageError{msg};
}

// Output goes to a buffer first; an error after partial computation must not
// leave a truncated file or stdout garbage behind.
void deliver(const std::string& text, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::cout << text;
        return;
    }
    std::ofstream os(*out_path, std::ios::binary);
    if (!os)
        throw UsageError{"cannot open --out path '" + *out_path + "' for writing"};
    os << text;
    if (!os.flush())
        throw UsageError{"write to --out path '" + *out_path + "' failed"};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    if (n == 1)
        xs[0] = lo;
    return xs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-rational approximants of modified Bessel functions"};
    app.require_subcommand(1);

    double nu = 0.0, x = 0.0;
    double a = 0.0, b = 50.0;
    int points = 2000;
    int quad_nodes = 128;
    std::optional<double> lambda_opt;
    double lambda_min_flag = 0.05, lambda_max_flag = 0.5;
    double nu_min = 0.0, nu_max = 0.0, sweep_lambda_min = 0.0, sweep_lambda_max = 0.0;
    int nu_steps = 0, lambda_steps = 0;
    std::optional<std::string> out_path;

    auto* cmd_params = app.add_subcommand("params", "Solve the six-parameter set, print JSON");
    cmd_params->add_option("--nu", nu)->required();
    cmd_params->add_option("--lambda", lambda_opt);

    auto* cmd_eval = app.add_subcommand("eval", "Evaluate the approximant at one point");
    cmd_eval->add_option("--nu", nu)->required();
    cmd_eval->add_option("--x", x)->required();
    cmd_eval->add_option("--lambda", lambda_opt);

    auto* cmd_curve = app.add_subcommand("error-curve", "Punctual error curve as CSV");
    cmd_curve->add_option("--nu", nu)->required();
    cmd_curve->add_option("--lambda", lambda_opt);
    cmd_curve->add_option("--a", a);
    cmd_curve->add_option("--b", b);
    cmd_curve->add_option("--points", points);
    cmd_curve->add_option("--out", out_path);

    auto* cmd_sweep = app.add_subcommand("sweep", "Global-error surface over (nu, lambda)");
    cmd_sweep->add_option("--nu-min", nu_min)->required();
    cmd_sweep->add_option("--nu-max", nu_max)->required();
    cmd_sweep->add_option("--nu-steps", nu_steps)->required();
    cmd_sweep->add_option("--lambda-min", sweep_lambda_min)->required();
    cmd_sweep->add_option("--lambda-max", sweep_lambda_max)->required();
    cmd_sweep->add_option("--lambda-steps", lambda_steps)->required();
    cmd_sweep->add_option("--out", out_path);

    auto* cmd_opt = app.add_subcommand("optimize", "Minimize the global error over lambda");
    cmd_opt->add_option("--nu", nu)->required();
    cmd_opt->add_option("--lambda-min", lambda_min_flag);
    cmd_opt->add_option("--lambda-max", lambda_max_flag);

    auto* cmd_fde = app.add_subcommand("verify-fde", "Product-solution verification as CSV");
    cmd_fde->add_option("--nu", nu)->required();
    cmd_fde->add_option("--lambda", lambda_opt);
    cmd_fde->add_option("--a", a);
    cmd_fde->add_option("--b", b);
    cmd_fde->add_option("--quad-nodes", quad_nodes);
    cmd_fde->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print to stdout by design
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_params) {
            check(nu >= 0.0 && nu <= 1.0, "--nu must be in [0, 1]");
            const double lam = lambda_opt ? *lambda_opt : mpqa::lambda_star(nu);
            check(lam > 0.0, "--lambda must be > 0");
            const auto p = mpqa::solve_params(lam, nu);
            deliver(mpqa::to_json(p).dump(2) + "\n", std::nullopt);
        } else if (*cmd_eval) {
            check(nu >= 0.0 && nu <= 1.0, "--nu must be in [0, 1]");
            check(x >= 0.0, "--x must be >= 0");
            const double lam = lambda_opt ? *lambda_opt : mpqa::lambda_star(nu);
            check(lam > 0.0, "--lambda must be > 0");
            const auto p = mpqa::solve_params(lam, nu);
            deliver(mpqa::fmt17(mpqa::evaluate_approximant(p, x)) + "\n", std::nullopt);
        } else if (*cmd_curve) {
            check(nu >= 0.0 && nu <= 1.0, "--nu must be in [0, 1]");
            check(a >= 0.0 && a < b, "--a/--b must satisfy 0 <= a < b");
            check(points >= 64, "--points must be >= 64");
            const double lam = lambda_opt ? *lambda_opt : mpqa::lambda_star(nu);
            check(lam > 0.0, "--lambda must be > 0");
            const auto rep = mpqa::global_error(nu, lam, a, b, points);
            std::ostringstream os;
            mpqa::write_error_curve_csv(os, rep);
            deliver(os.str(), out_path);
        } else if (*cmd_sweep) {
            check(nu_min >= 0.0 && nu_min <= nu_max && nu_max <= 1.0,
                  "--nu-min/--nu-max must satisfy 0 <= min <= max <= 1");
            check(sweep_lambda_min > 0.0 && sweep_lambda_min <= sweep_lambda_max,
                  "--lambda-min/--lambda-max must satisfy 0 < min <= max");
            check(nu_steps >= 1, "--nu-steps must be >= 1");
            check(lambda_steps >= 1, "--lambda-steps must be >= 1");
            check(nu_steps == 1 || nu_min < nu_max,
                  "--nu-steps > 1 needs --nu-min < --nu-max");
            check(lambda_steps == 1 || sweep_lambda_min < sweep_lambda_max,
                  "--lambda-steps > 1 needs --lambda-min < --lambda-max");
            const auto surf = mpqa::sweep_error_surface(
                linspace(nu_min, nu_max, nu_steps),
                linspace(sweep_lambda_min, sweep_lambda_max, lambda_steps), 0.0, 50.0, 128);
            std::ostringstream os;
            mpqa::write_surface_csv(os, surf);
            deliver(os.str(), out_path);
        } else if (*cmd_opt) {
            check(nu >= 0.0 && nu <= 1.0, "--nu must be in [0, 1]");
            check(lambda_min_flag > 0.0 && lambda_min_flag < lambda_max_flag,
                  "--lambda-min/--lambda-max must satisfy 0 < min < max");
            const auto [lam_min, err_min] =
                mpqa::optimize_lambda(nu, lambda_min_flag, lambda_max_flag, 64, 0.0, 50.0);
            std::ostringstream os;
            mpqa::write_optima_csv(os, {{nu, lam_min, err_min}});
            deliver(os.str(), std::nullopt);
        } else if (*cmd_fde) {
            check(nu >= 0.5 && nu <= 1.0, "--nu must be in [1/2, 1]");
            check(a >= 0.0 && a < b, "--a/--b must satisfy 0 <= a < b");
            check(quad_nodes >= 32, "--quad-nodes must be >= 32");
            mpqa::FdeConfig cfg = mpqa::make_fde_config(nu);
            if (lambda_opt) {
                check(*lambda_opt > 0.0, "--lambda must be > 0");
                cfg.lambda_a = cfg.lambda_b = *lambda_opt;
            }
            const auto recs = mpqa::verify_records(cfg, a, b, 2000, quad_nodes);
            std::ostringstream os;
            mpqa::write_fde_csv(os, recs);
            deliver(os.str(), out_path);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mpqa::inadmissible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
