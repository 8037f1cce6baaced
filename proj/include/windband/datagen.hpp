#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windband/core.hpp"

namespace windband {

// Synthetic-data knobs. The base process is a clamped mean-reverting walk;
// providers add an autocorrelated error on top of the actuals, with a
// per-day chance of an inflated ("atypical") error scale.
struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t n_days = 120;
    std::size_t horizon = 72;
    std::string start_date = "2016-01-01";

    double mean_level = 0.35;
    double mean_reversion = 0.12;
    double noise_scale = 0.04;

    void validate() const;
};

struct ProviderParams {
    double bias = 0.0;
    double error_scale = 0.05;       // stationary sd of the error process
    double error_autocorr = 0.8;
    double p_atypical = 0.10;
    double atypical_multiplier = 3.0;
    bool assimilated = true;         // force forecast[0] == actual[0]

    void validate() const;
};

struct GeneratedActuals {
    std::vector<std::string> day_ids;
    std::vector<std::vector<double>> values;
};

struct GeneratedProvider {
    std::vector<std::vector<double>> forecasts;
    std::vector<int> atypical_truth; // 1 where the inflated error was injected
};

GeneratedActuals generate_actuals(const GenConfig& config);

GeneratedProvider generate_provider(const GeneratedActuals& actuals,
                                    const ProviderParams& params, std::uint64_t seed);

std::vector<DayRecord> to_day_records(const GeneratedActuals& actuals,
                                      const GeneratedProvider& provider);

// Emits the ingestion CSV contract (`day_id,t,value`), byte-deterministic.
void write_series_csv(const std::string& path, const std::vector<std::string>& day_ids,
                      const std::vector<std::vector<double>>& values);

// Ground-truth atypical flags (`day_id,atypical`), for recovery checks.
void write_truth_csv(const std::string& path, const std::vector<std::string>& day_ids,
                     const std::vector<int>& flags);

} // namespace windband
