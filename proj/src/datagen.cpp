#include "windband/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "windband/errors.hpp"
#include "windband/util.hpp"

namespace windband {

void GenConfig::validate() const {
    if (n_days < 1) throw ValidationError("n_days must be >= 1");
    if (horizon < 2) throw ValidationError("horizon must be >= 2");
    if (mean_level < 0.0 || mean_level > 1.0)
        throw ValidationError("mean_level outside [0,1]");
    if (mean_reversion < 0.0 || mean_reversion > 1.0)
        throw ValidationError("mean_reversion outside [0,1]");
    if (noise_scale < 0.0) throw ValidationError("noise_scale must be >= 0");
    if (!is_iso_date(start_date)) throw ValidationError("start_date is not ISO-8601");
}

void ProviderParams::validate() const {
    if (error_scale < 0.0) throw ValidationError("error_scale must be >= 0");
    if (error_autocorr < 0.0 || error_autocorr >= 1.0)
        throw ValidationError("error_autocorr outside [0,1)");
    if (p_atypical < 0.0 || p_atypical > 1.0)
        throw ValidationError("p_atypical outside [0,1]");
    if (atypical_multiplier < 0.0)
        throw ValidationError("atypical_multiplier must be >= 0");
}

GeneratedActuals generate_actuals(const GenConfig& config) {
    config.validate();
    GeneratedActuals out;
    out.day_ids.reserve(config.n_days);
    out.values.reserve(config.n_days);
    for (std::size_t d = 0; d < config.n_days; ++d) {
        SplitMix64 rng(SplitMix64::derive(config.seed, d));
        std::vector<double> w(config.horizon);
        w[0] = std::clamp(config.mean_level + config.noise_scale * 2.0 * rng.next_gaussian(),
                          0.0, 1.0);
        for (std::size_t t = 1; t < config.horizon; ++t) {
            const double drift = config.mean_reversion * (config.mean_level - w[t - 1]);
            const double shock = config.noise_scale * rng.next_gaussian();
            w[t] = std::clamp(w[t - 1] + drift + shock, 0.0, 1.0);
        }
        out.day_ids.push_back(iso_date_add(config.start_date, static_cast<long>(d)));
        out.values.push_back(std::move(w));
    }
    return out;
}

GeneratedProvider generate_provider(const GeneratedActuals& actuals,
                                    const ProviderParams& params, std::uint64_t seed) {
    params.validate();
    GeneratedProvider out;
    out.forecasts.reserve(actuals.values.size());
    out.atypical_truth.reserve(actuals.values.size());

    // Innovation sd so the error AR(1) has stationary sd == error_scale.
    const double rho = params.error_autocorr;
    const double innovation = params.error_scale * std::sqrt(1.0 - rho * rho);

    for (std::size_t d = 0; d < actuals.values.size(); ++d) {
        SplitMix64 rng(SplitMix64::derive(seed, d));
        const bool atypical = rng.next_double() < params.p_atypical;
        const double scale = atypical ? params.atypical_multiplier : 1.0;
        const std::vector<double>& w = actuals.values[d];
        std::vector<double> p(w.size());
        double err = scale * params.error_scale * rng.next_gaussian();
        for (std::size_t t = 0; t < w.size(); ++t) {
            if (t > 0) err = rho * err + scale * innovation * rng.next_gaussian();
            p[t] = std::clamp(w[t] + params.bias + err, 0.0, 1.0);
        }
        if (params.assimilated) p[0] = w[0];
        out.forecasts.push_back(std::move(p));
        out.atypical_truth.push_back(atypical ? 1 : 0);
    }
    return out;
}

std::vector<DayRecord> to_day_records(const GeneratedActuals& actuals,
                                      const GeneratedProvider& provider) {
    if (provider.forecasts.size() != actuals.values.size())
        throw DimensionError("provider and actuals day counts differ");
    std::vector<DayRecord> out;
    out.reserve(actuals.values.size());
    for (std::size_t d = 0; d < actuals.values.size(); ++d)
        out.emplace_back(actuals.day_ids[d], provider.forecasts[d], actuals.values[d]);
    return out;
}

void write_series_csv(const std::string& path, const std::vector<std::string>& day_ids,
                      const std::vector<std::vector<double>>& values) {
    if (day_ids.size() != values.size())
        throw DimensionError("day ids and value rows differ in length");
    std::ofstream outfile(path, std::ios::binary); // binary: byte-stable newlines
    if (!outfile) throw ValidationError("cannot write " + path);
    outfile << "day_id,t,value\n";
    char buf[32];
    for (std::size_t d = 0; d < day_ids.size(); ++d) {
        for (std::size_t t = 0; t < values[d].size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.6f", values[d][t]);
            outfile << day_ids[d] << ',' << t << ',' << buf << '\n';
        }
    }
}

void write_truth_csv(const std::string& path, const std::vector<std::string>& day_ids,
                     const std::vector<int>& flags) {
    if (day_ids.size() != flags.size())
        throw DimensionError("day ids and flags differ in length");
    std::ofstream outfile(path, std::ios::binary);
    if (!outfile) throw ValidationError("cannot write " + path);
    outfile << "day_id,atypical\n";
    for (std::size_t d = 0; d < day_ids.size(); ++d)
        outfile << day_ids[d] << ',' << flags[d] << '\n';
}

} // namespace windband
