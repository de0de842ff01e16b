// Command-line front end: probability queries, deficit sweeps, curvature
// recovery, and isometry-invariance experiments, emitted as JSON or CSV.

#include "buffon/analytic.hpp"
#include "buffon/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace {

using buffon::GridSpec;
using buffon::McResult;
using buffon::Method;
using buffon::NeedleSetup;
using buffon::ProbabilityEstimate;
using buffon::Surface;
using json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitFit = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string surface = "plane";
    double radius = 1.0;
    int n = 0;          // sphere grating index
    double ell = 0.0;   // plane/disk half-length (sphere with override)
    bool allow_incommensurate = false;
    std::string method = "analytic";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int workers = 1;
    double tol = 1e-10;
    std::string format; // json | csv; per-command default
    std::string out_path;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BUFFON_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw ConfigError("BUFFON_SEED is not an unsigned integer: " +
                              std::string(env));
        return v;
    }
    return 0;
}

NeedleSetup make_setup(const RunConfig& cfg) {
    if (cfg.surface == "plane") {
        if (cfg.n != 0)
            throw ConfigError("--n applies only to the sphere");
        if (!(cfg.ell > 0.0))
            throw ConfigError("plane setup requires --ell > 0");
        return NeedleSetup::plane(cfg.ell);
    }
    if (cfg.surface == "hyperbolic") {
        if (cfg.n != 0)
            throw ConfigError("--n applies only to the sphere");
        if (!(cfg.ell > 0.0))
            throw ConfigError("hyperbolic setup requires --ell > 0");
        return NeedleSetup::poincare_disk(cfg.ell);
    }
    if (cfg.surface == "sphere") {
        if (cfg.n != 0 && cfg.ell != 0.0)
            throw ConfigError("give exactly one of --n and --ell for the sphere");
        if (cfg.n != 0)
            return NeedleSetup::sphere(cfg.radius, cfg.n);
        if (cfg.ell != 0.0) {
            if (!cfg.allow_incommensurate)
                throw ConfigError(
                    "sphere spacing must be commensurate: ell = pi*r/(2n); pass "
                    "--n, or --allow-incommensurate for quadrature-only use");
            return NeedleSetup::sphere_incommensurate(cfg.radius, cfg.ell);
        }
        throw ConfigError("sphere setup requires --n (or --ell with "
                          "--allow-incommensurate)");
    }
    throw ConfigError("unknown surface: " + cfg.surface);
}

json params_json(const NeedleSetup& setup) {
    json params;
    if (setup.surface().is_sphere()) {
        params["radius"] = setup.surface().radius();
        if (setup.sphere_index())
            params["n"] = *setup.sphere_index();
    }
    params["ell"] = setup.half_length();
    return params;
}

std::string format_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file: " + cfg.out_path);
    out << text;
}

ProbabilityEstimate evaluate_probability(const RunConfig& cfg,
                                         const NeedleSetup& setup) {
    if (cfg.method == "analytic")
        return buffon::probability(setup, cfg.tol);
    if (cfg.method == "oracle")
        return buffon::probability_via_arclength(setup, cfg.tol);
    if (cfg.method == "series") {
        ProbabilityEstimate est;
        est.value = buffon::series_probability(setup.surface(), setup.half_length());
        est.error = 0.0;
        est.method = Method::Series;
        est.detail = 0;
        return est;
    }
    if (cfg.method == "mc") {
        if (cfg.samples < 1)
            throw ConfigError("--samples must be at least 1 for --method mc");
        const McResult mc =
            buffon::estimate(setup, cfg.samples, cfg.seed, cfg.workers);
        ProbabilityEstimate est;
        est.value = mc.estimate;
        est.error = mc.standard_error;
        est.method = Method::MonteCarlo;
        est.detail = static_cast<std::int64_t>(mc.samples);
        est.seed = mc.seed;
        return est;
    }
    throw ConfigError("unknown method: " + cfg.method);
}

int cmd_probability(const RunConfig& cfg) {
    const NeedleSetup setup = make_setup(cfg);
    const ProbabilityEstimate est = evaluate_probability(cfg, setup);

    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "surface,ell,method,value,error,detail,seed\n";
        out << cfg.surface << ',' << format_sig10(setup.half_length()) << ','
            << buffon::method_name(est.method) << ',' << format_sig10(est.value)
            << ',' << format_sig10(est.error) << ',' << est.detail << ',';
        if (est.seed)
            out << *est.seed;
        out << '\n';
        emit(cfg, out.str());
        return 0;
    }

    json record;
    record["surface"] = cfg.surface;
    record["params"] = params_json(setup);
    record["method"] = buffon::method_name(est.method);
    record["value"] = est.value;
    record["error"] = est.error;
    record["detail"] = est.detail;
    record["seed"] = est.seed ? json(*est.seed) : json(nullptr);
    emit(cfg, record.dump() + "\n");
    return 0;
}

GridSpec make_grid(const RunConfig& cfg, const Surface& surface, int levels,
                   double ell_max, int n_start) {
    GridSpec grid = GridSpec::defaults(surface);
    if (levels > 0)
        grid.levels = levels;
    if (ell_max > 0.0) {
        if (surface.is_sphere()) {
            // Snap to the largest grating-legal ell not exceeding the request.
            const int n = std::max(
                2, static_cast<int>(
                       std::ceil(std::numbers::pi * cfg.radius / (2.0 * ell_max))));
            grid.index_start = n;
        } else {
            grid.ell_max = ell_max;
        }
    }
    if (n_start > 0) {
        if (!surface.is_sphere())
            throw ConfigError("--n-start applies only to the sphere");
        if (n_start < 2)
            throw ConfigError("--n-start must be at least 2");
        grid.index_start = n_start;
    }
    return grid;
}

Surface surface_from_name(const std::string& name, double radius) {
    if (name == "plane")
        return Surface::plane();
    if (name == "sphere")
        return Surface::sphere(radius);
    if (name == "hyperbolic")
        return Surface::poincare_disk();
    throw ConfigError("unknown surface: " + name);
}

int cmd_deficit_sweep(const RunConfig& cfg, int levels, double ell_max, int n_start) {
    const Surface surface = surface_from_name(cfg.surface, cfg.radius);
    const GridSpec grid = make_grid(cfg, surface, levels, ell_max, n_start);
    if (grid.levels < 2)
        throw ConfigError("--levels must be at least 2");
    const buffon::DeficitCurve curve =
        buffon::deficit_curve(surface, cfg.radius, grid, cfg.tol);

    if (cfg.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < curve.ells.size(); ++i) {
            const double ell = curve.ells[i];
            json row;
            row["ell"] = ell;
            row["probability"] = curve.probs[i].value;
            row["prob_error"] = curve.probs[i].error;
            row["deficit"] = curve.deficits[i];
            row["kappa_pointwise"] =
                4.5 * std::numbers::pi * curve.deficits[i] / (ell * ell);
            rows.push_back(std::move(row));
        }
        emit(cfg, rows.dump() + "\n");
        return 0;
    }

    std::ostringstream out;
    out << "ell,probability,prob_error,deficit,kappa_pointwise\n";
    for (std::size_t i = 0; i < curve.ells.size(); ++i) {
        const double ell = curve.ells[i];
        const double kappa_pointwise =
            4.5 * std::numbers::pi * curve.deficits[i] / (ell * ell);
        out << format_sig10(ell) << ',' << format_sig10(curve.probs[i].value)
            << ',' << format_sig10(curve.probs[i].error) << ','
            << format_sig10(curve.deficits[i]) << ','
            << format_sig10(kappa_pointwise) << '\n';
    }
    emit(cfg, out.str());
    return 0;
}

int cmd_curvature(const RunConfig& cfg, int levels, double ell_max, int n_start) {
    const Surface surface = surface_from_name(cfg.surface, cfg.radius);
    const GridSpec grid = make_grid(cfg, surface, levels, ell_max, n_start);
    const buffon::CurvatureEstimate est =
        buffon::curvature_estimate(surface, cfg.radius, grid, cfg.tol);

    json record;
    record["kappa_hat"] = est.kappa_hat;
    record["coeff_a"] = est.coeff_a;
    record["residual_rms"] = est.residual_rms;
    json rows = json::array();
    for (std::size_t i = 0; i < est.grid.ells.size(); ++i) {
        json row;
        row["ell"] = est.grid.ells[i];
        row["probability"] = est.grid.probs[i].value;
        row["prob_error"] = est.grid.probs[i].error;
        row["deficit"] = est.grid.deficits[i];
        rows.push_back(std::move(row));
    }
    record["grid"] = std::move(rows);
    emit(cfg, record.dump() + "\n");
    return 0;
}

json mc_json(const McResult& r) {
    json out;
    out["hits"] = r.hits;
    out["samples"] = r.samples;
    out["estimate"] = r.estimate;
    out["standard_error"] = r.standard_error;
    out["seed"] = r.seed;
    return out;
}

int cmd_invariance(const RunConfig& cfg, std::optional<double> offset,
                   std::optional<double> offset_period) {
    if (offset.has_value() == offset_period.has_value())
        throw ConfigError("give exactly one of --offset and --offset-period");
    const NeedleSetup setup = make_setup(cfg);
    const bool shared_seed = offset_period.has_value();
    const double d =
        offset ? *offset : *offset_period * setup.spacing();
    if (cfg.samples < 1)
        throw ConfigError("--samples must be at least 1");

    const auto [baseline, shifted] = buffon::invariance_experiment(
        setup, d, cfg.samples, cfg.seed, cfg.workers, shared_seed);
    const double var = baseline.standard_error * baseline.standard_error +
                       shifted.standard_error * shifted.standard_error;
    const double diff = baseline.estimate - shifted.estimate;
    double z = 0.0;
    if (var > 0.0)
        z = diff / std::sqrt(var);
    else if (diff != 0.0)
        z = std::numeric_limits<double>::infinity();

    json record;
    record["surface"] = cfg.surface;
    record["params"] = params_json(setup);
    record["offset"] = d;
    record["shared_seed"] = shared_seed;
    record["baseline"] = mc_json(baseline);
    record["shifted"] = mc_json(shifted);
    record["z"] = z;
    emit(cfg, record.dump() + "\n");
    return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--surface", cfg.surface, "plane | sphere | hyperbolic")
        ->required()
        ->check(CLI::IsMember({"plane", "sphere", "hyperbolic"}));
    cmd->add_option("--radius", cfg.radius, "sphere radius (default 1)");
    cmd->add_option("--n", cfg.n, "sphere grating index: ell = pi*r/(2n)");
    cmd->add_option("--ell", cfg.ell, "needle half-length");
    cmd->add_flag("--allow-incommensurate", cfg.allow_incommensurate,
                  "accept a sphere --ell that is not pi*r/(2n); quadrature only");
    cmd->add_option("--tol", cfg.tol, "quadrature tolerance (default 1e-10)");
    cmd->add_option("--out", cfg.out_path, "write output to a file instead of stdout");
}

void add_mc_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", cfg.seed, "random seed (default $BUFFON_SEED or 0)");
    cmd->add_option("--workers", cfg.workers, "worker threads (default 1)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buffon needle probabilities and curvature recovery on the "
                 "plane, the sphere, and the Poincare disk"};
    app.require_subcommand(1);

    RunConfig cfg;
    int levels = 0;
    double ell_max = 0.0;
    int n_start = 0;
    std::optional<double> offset;
    std::optional<double> offset_period;

    CLI::App* prob = app.add_subcommand(
        "probability", "intersection probability for one needle setup");
    add_common_flags(prob, cfg);
    add_mc_flags(prob, cfg);
    prob->add_option("--method", cfg.method, "analytic | series | mc | oracle")
        ->check(CLI::IsMember({"analytic", "series", "mc", "oracle"}));
    prob->add_option("--format", cfg.format, "json | csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* sweep = app.add_subcommand(
        "deficit-sweep", "per-ell probability deficits as a CSV table");
    add_common_flags(sweep, cfg);
    sweep->add_option("--levels", levels, "grid levels (default 6; sphere 5)");
    sweep->add_option("--ell-max", ell_max, "largest ell in the grid");
    sweep->add_option("--n-start", n_start, "sphere: smallest grating index");
    sweep->add_option("--format", cfg.format, "csv | json (default csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* curv = app.add_subcommand(
        "curvature", "recover Gaussian curvature from the deficit grid");
    add_common_flags(curv, cfg);
    curv->add_option("--levels", levels, "grid levels (default 6; sphere 5)");
    curv->add_option("--ell-max", ell_max, "largest ell in the grid");
    curv->add_option("--n-start", n_start, "sphere: smallest grating index");

    CLI::App* inv = app.add_subcommand(
        "invariance", "baseline vs isometry-shifted Monte Carlo runs");
    add_common_flags(inv, cfg);
    add_mc_flags(inv, cfg);
    inv->add_option_function<double>(
        "--offset", [&offset](const double& v) { offset = v; },
        "shift displacement in arc-length units (independent seeds)");
    inv->add_option_function<double>(
        "--offset-period", [&offset_period](const double& v) { offset_period = v; },
        "shift displacement in units of the spacing L (shared seed)");

    try {
        cfg.seed = default_seed();
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : kExitConfig;
        }

        if (prob->parsed()) {
            if (cfg.format.empty())
                cfg.format = "json";
            return cmd_probability(cfg);
        }
        if (sweep->parsed()) {
            if (cfg.format.empty())
                cfg.format = "csv";
            return cmd_deficit_sweep(cfg, levels, ell_max, n_start);
        }
        if (curv->parsed())
            return cmd_curvature(cfg, levels, ell_max, n_start);
        if (inv->parsed())
            return cmd_invariance(cfg, offset, offset_period);
        std::cerr << "no subcommand given\n";
        return kExitConfig;
    } catch (const buffon::QuadratureError& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return kExitQuadrature;
    } catch (const buffon::FitError& e) {
        std::cerr << "fit failure: " << e.what() << "\n";
        return kExitFit;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
