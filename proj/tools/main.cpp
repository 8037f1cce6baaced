// windband: minimal-width relative confidence bands around wind-power
// point forecasts. Subcommands wire the library into reproducible
// file-to-file workflows; all randomness flows from --seed.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "windband/combination.hpp"
#include "windband/core.hpp"
#include "windband/datagen.hpp"
#include "windband/errors.hpp"
#include "windband/evaluation.hpp"
#include "windband/ingestion.hpp"
#include "windband/optimizer.hpp"
#include "windband/util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace windband;

namespace {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitLimit = 4;

struct OutDir {
    fs::path path;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

OutDir prepare_outdir(const std::string& out, bool force) {
    fs::path p(out);
    if (fs::exists(p)) {
        if (!force)
            throw ValidationError("output directory '" + out +
                                  "' already exists (use --force to overwrite)");
        fs::remove_all(p);
    }
    fs::create_directories(p);
    return OutDir{p};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << body;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- data load

struct LoadOptions {
    std::string actual_path;
    std::string capacity_path;
    std::string units = "plf";
    std::size_t horizon = 72;
    std::size_t assimilation_window = 6;
    bool no_assimilation = false;

    std::string split = "all"; // all | train | test
    std::size_t train_days = 0;
    double train_fraction = -1.0;
    std::uint64_t seed = 1;

    void add_flags(CLI::App* cmd, bool with_split) {
        cmd->add_option("--actual", actual_path, "Actual generation CSV (day_id,t,value)")
            ->required();
        cmd->add_option("--capacity", capacity_path,
                        "Per-day installed capacity CSV (day_id,capacity_mw)");
        cmd->add_option("--units", units, "Input units: plf or mw")
            ->check(CLI::IsMember({"plf", "mw"}))
            ->capture_default_str();
        cmd->add_option("--horizon", horizon, "Samples per forecast")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--assimilation-window", assimilation_window,
                        "Hours blended so the forecast matches the measured start")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_flag("--no-assimilation", no_assimilation,
                      "Skip the start-state assimilation pass");
        if (with_split) {
            cmd->add_option("--split", split, "Day subset to use: all, train or test")
                ->check(CLI::IsMember({"all", "train", "test"}))
                ->capture_default_str();
            cmd->add_option("--train-days", train_days, "Training-set size for the split");
            cmd->add_option("--train-fraction", train_fraction,
                            "Training-set fraction for the split");
            cmd->add_option("--seed", seed, "Seed for the train/test split")
                ->capture_default_str();
        }
    }

    RawSeries load_series(const std::string& path) const {
        const Units u = units == "mw" ? Units::mw : Units::plf;
        RawSeries series = parse_csv(path, u, horizon);
        if (u == Units::mw) {
            if (capacity_path.empty())
                throw ValidationError("--capacity is required with --units mw");
            series.capacity_mw = parse_capacity_csv(capacity_path);
            series = normalize_plf(series);
        }
        return series;
    }

    AlignedDataset load(const std::vector<std::pair<std::string, std::string>>& providers) const {
        std::vector<std::pair<std::string, RawSeries>> parsed;
        parsed.reserve(providers.size());
        for (const auto& [name, path] : providers)
            parsed.emplace_back(name, load_series(path));
        AlignedDataset aligned = align(parsed, load_series(actual_path));
        if (!no_assimilation) apply_assimilation(aligned, assimilation_window);
        return aligned;
    }

    AlignedDataset apply_split(const AlignedDataset& all) const {
        if (split == "all") return all;
        std::pair<AlignedDataset, AlignedDataset> parts =
            train_fraction >= 0.0
                ? split_train_test_fraction(all, train_fraction, seed)
                : split_train_test(all, train_days, seed);
        return split == "train" ? parts.first : parts.second;
    }
};

struct SolverFlags {
    double tolerance = 1e-6;
    long node_limit = 100000;
    double time_limit = 1e18;
    double x_cap = -1.0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--tolerance", tolerance, "Solver tolerance")->capture_default_str();
        cmd->add_option("--node-limit", node_limit, "Branch-and-bound node budget")
            ->capture_default_str();
        cmd->add_option("--time-limit", time_limit, "Solve wall-clock budget in seconds");
        cmd->add_option("--x-cap", x_cap, "Optional upper bound on every band coefficient");
    }

    SolverOptions to_options() const {
        SolverOptions opts;
        opts.tolerance = tolerance;
        opts.node_limit = node_limit;
        opts.time_limit_seconds = time_limit;
        if (x_cap >= 0.0) opts.x_cap = x_cap;
        return opts;
    }
};

// ------------------------------------------------------------------- bands

json band_to_json(const BandCoefficients& coeffs) {
    json j;
    j["format"] = "windband-band-v1";
    j["theta"] = coeffs.theta;
    j["lambda"] = coeffs.lambda;
    j["horizon"] = coeffs.horizon();
    j["x"] = coeffs.x;
    return j;
}

BandCoefficients band_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open band file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("band file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.contains("x") || !j.contains("theta") || !j.contains("lambda"))
        throw ValidationError("band file " + path + " lacks x/theta/lambda");
    return BandCoefficients(j["x"].get<std::vector<double>>(), j["theta"].get<double>(),
                            j["lambda"].get<double>());
}

void write_day_band_csv(const std::string& path, const DayRecord& day,
                        const BandLimits& limits) {
    std::string body = "t,forecast,actual,lower,upper\n";
    for (std::size_t t = 0; t < day.horizon(); ++t) {
        body += std::to_string(t) + "," + format_num(day.forecast[t]) + "," +
                format_num(day.actual[t]) + "," + format_num(limits.lower[t]) + "," +
                format_num(limits.upper[t]) + "\n";
    }
    write_text(path, body);
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& out, bool force, GenConfig config, ProviderParams params,
                 std::size_t n_providers) {
    const OutDir dir = prepare_outdir(out, force);
    const GeneratedActuals actuals = generate_actuals(config);
    write_series_csv(dir.file("actuals.csv"), actuals.day_ids, actuals.values);

    json meta;
    meta["seed"] = config.seed;
    meta["n_days"] = config.n_days;
    meta["horizon"] = config.horizon;
    meta["providers"] = n_providers;

    for (std::size_t k = 1; k <= n_providers; ++k) {
        const std::uint64_t provider_seed = SplitMix64::derive(config.seed, 1000 + k);
        const GeneratedProvider provider = generate_provider(actuals, params, provider_seed);
        const std::string name = "provider" + std::to_string(k);
        write_series_csv(dir.file(name + ".csv"), actuals.day_ids, provider.forecasts);
        write_truth_csv(dir.file(name + "_atypical.csv"), actuals.day_ids,
                        provider.atypical_truth);
        std::size_t injected = 0;
        for (int f : provider.atypical_truth) injected += f;
        meta[name + "_injected_atypical"] = injected;
    }
    write_json(dir.file("generate_meta.json"), meta);
    std::cout << "generated " << config.n_days << " days x " << config.horizon
              << " hours into " << out << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------- train

int cmd_train(const std::string& forecast_path, const LoadOptions& load_opts,
              const SolverFlags& solver_flags, double theta, double lambda,
              const std::string& mean_source, const std::string& out, bool force) {
    const OutDir dir = prepare_outdir(out, force);
    const AlignedDataset all = load_opts.load({{"provider", forecast_path}});
    const AlignedDataset train = load_opts.apply_split(all);
    if (train.day_count() == 0) throw ValidationError("training split is empty");

    const std::vector<DayRecord> train_days = train.day_records("provider");
    const MeanProfile mean = mean_source == "all"
                                 ? mean_profile_of(all.day_records("provider"))
                                 : mean_profile_of(train_days);
    const BandProblem problem = build_instance(train_days, mean, theta, lambda);
    const SolverOptions options = solver_flags.to_options();
    const BandSolution sol = solve(problem, options);

    std::cerr << "solve: status=" << to_string(sol.status) << " objective="
              << format_num(sol.objective) << " nodes=" << sol.nodes
              << " lp_iterations=" << sol.lp_iterations << " seconds="
              << format_num(sol.solve_seconds) << "\n";
    for (const std::string& w : sol.warnings) std::cerr << "warning: " << w << "\n";

    if (sol.status == SolveStatus::infeasible) {
        if (sol.infeasible_day)
            std::cerr << "infeasible: day " << problem.days[*sol.infeasible_day].day_id
                      << " cannot satisfy the off-band budget at any band width\n";
        return kExitInfeasible;
    }
    if (!sol.has_solution()) {
        std::cerr << "no solution within the node/time budget (lower bound "
                  << format_num(sol.lower_bound) << ")\n";
        return kExitLimit;
    }

    json band = band_to_json(sol.coefficients);
    json provenance;
    provenance["forecast_file"] = forecast_path;
    provenance["forecast_hash"] = fnv1a_file_hex(forecast_path);
    provenance["actual_file"] = load_opts.actual_path;
    provenance["actual_hash"] = fnv1a_file_hex(load_opts.actual_path);
    provenance["seed"] = load_opts.seed;
    provenance["split"] = load_opts.split;
    provenance["train_days"] = train.day_count();
    provenance["mean_source"] = mean_source;
    json solver_stats;
    solver_stats["status"] = to_string(sol.status);
    solver_stats["objective"] = sol.objective;
    solver_stats["lower_bound"] = sol.lower_bound;
    solver_stats["nodes"] = sol.nodes;
    solver_stats["lp_iterations"] = sol.lp_iterations;
    solver_stats["cuts"] = sol.cuts_generated;
    provenance["solver"] = solver_stats;
    band["provenance"] = provenance;
    write_json(dir.file("band.json"), band);

    // Per-day training report; irreducible hours flag data problems.
    std::map<std::size_t, std::size_t> irreducible_per_day;
    for (const auto& [d, t] : irreducible_hours(problem)) ++irreducible_per_day[d];
    std::string report = "day_id,regular,offband_energy,mean_violation,irreducible_hours\n";
    for (std::size_t d = 0; d < problem.day_count(); ++d) {
        const DayRecord& day = problem.days[d];
        const BandLimits limits = band_limits(day.forecast, sol.coefficients);
        double z_sum = 0.0;
        for (double z : sol.violations[d]) z_sum += z;
        report += day.day_id + "," + std::to_string(sol.regular_flags[d]) + "," +
                  format_num(offband_energy(day, limits)) + "," +
                  format_num(z_sum / static_cast<double>(problem.horizon())) + "," +
                  std::to_string(irreducible_per_day.count(d) ? irreducible_per_day[d] : 0) +
                  "\n";
    }
    write_text(dir.file("train_report.csv"), report);

    if (sol.status == SolveStatus::iteration_limit) {
        std::cerr << "stopped at the node/time budget; band.json holds the incumbent "
                     "(lower bound "
                  << format_num(sol.lower_bound) << ")\n";
        return kExitLimit;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& forecast_path, const LoadOptions& load_opts,
                 const std::string& band_path, std::optional<double> theta_override,
                 bool day_files, const std::string& out, bool force) {
    const OutDir dir = prepare_outdir(out, force);
    const BandCoefficients coeffs = band_from_json(band_path);
    const AlignedDataset all = load_opts.load({{"provider", forecast_path}});
    if (all.horizon != coeffs.horizon())
        throw DimensionError("band horizon " + std::to_string(coeffs.horizon()) +
                             " != data horizon " + std::to_string(all.horizon));
    const AlignedDataset subset = load_opts.apply_split(all);
    if (subset.day_count() == 0) throw ValidationError("evaluation split is empty");
    const std::vector<DayRecord> days = subset.day_records("provider");

    const double theta = theta_override.value_or(coeffs.theta);
    const EvalReport report = evaluate_set(days, coeffs, theta);

    std::string csv = "day_id,offband_energy,abs_width,rel_width,atypical\n";
    for (const auto& row : report.per_day)
        csv += row.day_id + "," + format_num(row.offband_energy) + "," +
               format_num(row.abs_width) + "," +
               format_num(row.abs_width / static_cast<double>(coeffs.horizon())) + "," +
               (row.atypical ? "1" : "0") + "\n";
    write_text(dir.file("eval_report.csv"), csv);

    json summary;
    summary["theta"] = report.theta;
    summary["lambda"] = report.lambda;
    summary["horizon"] = coeffs.horizon();
    summary["n_days"] = report.n_days;
    summary["atypical_fraction"] = report.atypical_fraction;
    summary["mean_abs_width"] = report.mean_abs_width;
    summary["mean_rel_width"] = report.mean_rel_width;
    summary["band_file"] = band_path;
    summary["forecast_hash"] = fnv1a_file_hex(forecast_path);
    summary["actual_hash"] = fnv1a_file_hex(load_opts.actual_path);
    write_json(dir.file("eval_summary.json"), summary);

    if (day_files) {
        for (const DayRecord& day : days)
            write_day_band_csv(dir.file("bands_" + day.day_id + ".csv"), day,
                               band_limits(day.forecast, coeffs));
    }
    std::cout << "evaluated " << report.n_days << " days: atypical "
              << format_num(report.atypical_fraction * 100.0) << "%, mean width "
              << format_num(report.mean_abs_width) << " ("
              << format_num(report.mean_rel_width * 100.0) << "%)\n";
    return kExitOk;
}

// ----------------------------------------------------------------- combine

int cmd_combine(const std::string& forecast1, const std::string& forecast2,
                const LoadOptions& load_opts, const std::string& band1_path,
                const std::string& band2_path, std::optional<double> theta_override,
                std::optional<double> alpha_fixed, double budget, bool day_files,
                const std::string& out, bool force) {
    const OutDir dir = prepare_outdir(out, force);
    const BandCoefficients coeffs1 = band_from_json(band1_path);
    const BandCoefficients coeffs2 = band_from_json(band2_path);
    const AlignedDataset all =
        load_opts.load({{"provider1", forecast1}, {"provider2", forecast2}});
    const AlignedDataset subset = load_opts.apply_split(all);
    if (subset.day_count() == 0) throw ValidationError("combination split is empty");

    const std::vector<DayRecord> days1 = subset.day_records("provider1");
    const std::vector<DayRecord> days2 = subset.day_records("provider2");
    std::vector<DayPair> pairs;
    pairs.reserve(days1.size());
    for (std::size_t i = 0; i < days1.size(); ++i) pairs.emplace_back(days1[i], days2[i]);

    const double theta = theta_override.value_or(coeffs1.theta);
    std::vector<double> grid = alpha_fixed ? std::vector<double>{*alpha_fixed}
                                           : default_alpha_grid();
    const AlphaSearchResult result =
        alpha_search(pairs, coeffs1, coeffs2, grid, theta, budget);

    std::string csv = "alpha,atypical_fraction,mean_rel_width\n";
    for (const AlphaPoint& p : result.points)
        csv += format_num(p.alpha) + "," + format_num(p.atypical_fraction) + "," +
               format_num(p.mean_rel_width) + "\n";
    write_text(dir.file("alpha_grid.csv"), csv);

    json summary;
    summary["theta"] = theta;
    summary["atypical_budget"] = budget;
    summary["n_days"] = pairs.size();
    summary["grid_points"] = grid.size();
    if (result.alpha_star) {
        const AlphaPoint* best = result.best();
        summary["alpha_star"] = *result.alpha_star;
        summary["atypical_fraction"] = best->atypical_fraction;
        summary["mean_abs_width"] = best->mean_abs_width;
        summary["mean_rel_width"] = best->mean_rel_width;
    } else {
        summary["alpha_star"] = nullptr;
    }
    write_json(dir.file("combine_summary.json"), summary);

    if (!result.alpha_star) {
        std::cerr << "no alpha on the grid keeps the atypical fraction within "
                  << format_num(budget) << "\n";
        return kExitInfeasible;
    }

    if (day_files) {
        for (const DayPair& pair : pairs) {
            const CombinedBand band =
                combine(pair.first, coeffs1, pair.second, coeffs2, *result.alpha_star);
            std::string body = "t,forecast,actual,lower,upper\n";
            for (std::size_t t = 0; t < band.horizon(); ++t)
                body += std::to_string(t) + "," + format_num(band.forecast[t]) + "," +
                        format_num(pair.first.actual[t]) + "," + format_num(band.lower[t]) +
                        "," + format_num(band.upper[t]) + "\n";
            write_text(dir.file("bands_combined_" + pair.first.day_id + ".csv"), body);
        }
    }
    std::cout << "alpha* = " << format_num(*result.alpha_star) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ pareto

int cmd_pareto(const std::string& forecast_path, const LoadOptions& load_opts,
               const SolverFlags& solver_flags, double lambda,
               const std::vector<double>& theta_grid, const std::string& out, bool force) {
    const OutDir dir = prepare_outdir(out, force);
    const AlignedDataset all = load_opts.load({{"provider", forecast_path}});
    const AlignedDataset train = load_opts.apply_split(all);
    if (train.day_count() == 0) throw ValidationError("training split is empty");
    const std::vector<DayRecord> days = train.day_records("provider");
    const MeanProfile mean = mean_profile_of(days);

    const std::vector<ParetoPoint> curve =
        pareto_curve(days, mean, lambda, theta_grid, solver_flags.to_options());

    std::string csv = "theta,status,objective,mean_abs_width,mean_rel_width\n";
    for (const ParetoPoint& p : curve)
        csv += format_num(p.theta) + "," + to_string(p.status) + "," +
               format_num(p.objective) + "," + format_num(p.mean_abs_width) + "," +
               format_num(p.mean_rel_width) + "\n";
    write_text(dir.file("pareto.csv"), csv);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal-width relative confidence bands for wind power forecasts"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
    std::string gen_out;
    bool gen_force = false;
    GenConfig gen_config;
    ProviderParams gen_params;
    std::size_t gen_providers = 2;
    gen->add_option("--out,-o", gen_out, "Output directory")->required();
    gen->add_flag("--force", gen_force, "Overwrite the output directory");
    gen->add_option("--seed", gen_config.seed, "Master seed")->capture_default_str();
    gen->add_option("--days", gen_config.n_days, "Days to generate")->capture_default_str();
    gen->add_option("--horizon", gen_config.horizon, "Samples per day")->capture_default_str();
    gen->add_option("--start-date", gen_config.start_date, "First day id")
        ->capture_default_str();
    gen->add_option("--providers", gen_providers, "Number of forecast providers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--mean-level", gen_config.mean_level, "Mean PLF level")
        ->capture_default_str();
    gen->add_option("--mean-reversion", gen_config.mean_reversion, "Pull toward the mean")
        ->capture_default_str();
    gen->add_option("--noise-scale", gen_config.noise_scale, "Actuals innovation sd")
        ->capture_default_str();
    gen->add_option("--bias", gen_params.bias, "Provider bias")->capture_default_str();
    gen->add_option("--error-scale", gen_params.error_scale, "Provider error sd")
        ->capture_default_str();
    gen->add_option("--error-autocorr", gen_params.error_autocorr,
                    "Provider error autocorrelation")
        ->capture_default_str();
    gen->add_option("--p-atypical", gen_params.p_atypical, "Chance of an atypical day")
        ->capture_default_str();
    gen->add_option("--atypical-multiplier", gen_params.atypical_multiplier,
                    "Error inflation on atypical days")
        ->capture_default_str();

    // train
    auto* train = app.add_subcommand("train", "Solve the band optimization over training data");
    std::string train_forecast, train_out, train_mean_source = "train";
    bool train_force = false;
    double train_theta = 0.0, train_lambda = 1.0;
    LoadOptions train_load;
    SolverFlags train_solver;
    train->add_option("--forecast", train_forecast, "Forecast CSV")->required();
    train_load.add_flags(train, true);
    train->add_option("--theta", train_theta, "Off-band energy budget per day")->required();
    train->add_option("--lambda", train_lambda, "Minimum fraction of regular days")
        ->capture_default_str();
    train->add_option("--mean-source", train_mean_source,
                      "Day set for the objective weights: train or all")
        ->check(CLI::IsMember({"train", "all"}))
        ->capture_default_str();
    train->add_option("--out,-o", train_out, "Output directory")->required();
    train->add_flag("--force", train_force, "Overwrite the output directory");
    train_solver.add_flags(train);

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Score a trained band on a day set");
    std::string eval_forecast, eval_band, eval_out;
    bool eval_force = false, eval_no_day_files = false;
    double eval_theta = -1.0;
    LoadOptions eval_load;
    eval->add_option("--forecast", eval_forecast, "Forecast CSV")->required();
    eval_load.add_flags(eval, true);
    eval->add_option("--band", eval_band, "band.json from train")->required();
    eval->add_option("--theta", eval_theta,
                     "Atypical threshold override (defaults to the band's theta)");
    eval->add_flag("--no-day-files", eval_no_day_files, "Skip per-day bands_<day>.csv");
    eval->add_option("--out,-o", eval_out, "Output directory")->required();
    eval->add_flag("--force", eval_force, "Overwrite the output directory");

    // combine
    auto* comb = app.add_subcommand("combine", "Convex combination of two providers' bands");
    std::string comb_forecast1, comb_forecast2, comb_band1, comb_band2, comb_out;
    bool comb_force = false, comb_no_day_files = false;
    double comb_theta = -1.0, comb_alpha = -1.0, comb_budget = 0.10;
    LoadOptions comb_load;
    comb->add_option("--forecast1", comb_forecast1, "Provider 1 forecast CSV")->required();
    comb->add_option("--forecast2", comb_forecast2, "Provider 2 forecast CSV")->required();
    comb_load.add_flags(comb, true);
    comb->add_option("--band1", comb_band1, "Provider 1 band.json")->required();
    comb->add_option("--band2", comb_band2, "Provider 2 band.json")->required();
    comb->add_option("--theta", comb_theta,
                     "Atypical threshold (defaults to band1's theta)");
    comb->add_option("--alpha", comb_alpha, "Evaluate a single alpha instead of the grid");
    comb->add_option("--budget-atypical", comb_budget, "Atypical-fraction budget")
        ->capture_default_str();
    comb->add_flag("--no-day-files", comb_no_day_files,
                   "Skip per-day combined band files");
    comb->add_option("--out,-o", comb_out, "Output directory")->required();
    comb->add_flag("--force", comb_force, "Overwrite the output directory");

    // pareto
    auto* pareto = app.add_subcommand("pareto", "Width-vs-theta curve at fixed lambda");
    std::string pareto_forecast, pareto_out;
    bool pareto_force = false;
    double pareto_lambda = 1.0;
    std::vector<double> pareto_grid;
    LoadOptions pareto_load;
    SolverFlags pareto_solver;
    pareto->add_option("--forecast", pareto_forecast, "Forecast CSV")->required();
    pareto_load.add_flags(pareto, true);
    pareto->add_option("--lambda", pareto_lambda, "Fixed lambda")->capture_default_str();
    pareto->add_option("--theta-grid", pareto_grid, "Strictly increasing theta values")
        ->required()
        ->delimiter(',');
    pareto->add_option("--out,-o", pareto_out, "Output directory")->required();
    pareto->add_flag("--force", pareto_force, "Overwrite the output directory");
    pareto_solver.add_flags(pareto);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_out, gen_force, gen_config, gen_params, gen_providers);
        if (train->parsed())
            return cmd_train(train_forecast, train_load, train_solver, train_theta,
                             train_lambda, train_mean_source, train_out, train_force);
        if (eval->parsed())
            return cmd_evaluate(eval_forecast, eval_load, eval_band,
                                eval_theta >= 0.0 ? std::optional<double>(eval_theta)
                                                  : std::nullopt,
                                !eval_no_day_files, eval_out, eval_force);
        if (comb->parsed())
            return cmd_combine(comb_forecast1, comb_forecast2, comb_load, comb_band1,
                               comb_band2,
                               comb_theta >= 0.0 ? std::optional<double>(comb_theta)
                                                 : std::nullopt,
                               comb_alpha >= 0.0 ? std::optional<double>(comb_alpha)
                                                 : std::nullopt,
                               comb_budget, !comb_no_day_files, comb_out, comb_force);
        if (pareto->parsed())
            return cmd_pareto(pareto_forecast, pareto_load, pareto_solver, pareto_lambda,
                              pareto_grid, pareto_out, pareto_force);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const std::string& issue : e.issues()) std::cerr << "  " << issue << "\n";
        return kExitData;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitLimit;
    }
    return kExitUsage;
}
