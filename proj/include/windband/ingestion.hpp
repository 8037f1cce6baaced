#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "windband/core.hpp"

namespace windband {

enum class Units { plf, mw };

// One validated CSV row of the `day_id,t,value` contract.
struct RawRow {
    std::string day_id;
    std::size_t t = 0;
    double value = 0.0;
    std::size_t line = 0;
};

struct RawSeries {
    Units units = Units::plf;
    std::size_t horizon = 0;
    std::vector<RawRow> rows;
    std::map<std::string, double> capacity_mw; // optional, per day
};

// Strict parse of the documented format: header `day_id,t,value`, ISO
// dates, integer t in [0, horizon), decimal value. All offending lines
// are collected before the ParseError is thrown.
RawSeries parse_csv(const std::string& path, Units units, std::size_t horizon);

// Companion file `day_id,capacity_mw`.
std::map<std::string, double> parse_capacity_csv(const std::string& path);

// MW series -> PLF via the per-day installed capacity; PLF passes through.
RawSeries normalize_plf(const RawSeries& raw);

// Simplified power assimilation: a linearly decaying correction over the
// first `window` hours so the forecast matches the measured start exactly.
std::vector<double> assimilate(const std::vector<double>& forecast, double actual_start,
                               std::size_t window);

struct AlignedDataset {
    std::size_t horizon = 0;
    std::vector<std::string> day_ids; // sorted ascending
    std::map<std::string, std::vector<double>> actuals;
    std::vector<std::string> provider_names; // in align() argument order
    std::map<std::string, std::map<std::string, std::vector<double>>> forecasts;

    // days dropped per provider (and "actuals") because hours were missing
    std::map<std::string, std::size_t> dropped_incomplete;

    std::size_t day_count() const { return day_ids.size(); }
    std::vector<DayRecord> day_records(const std::string& provider) const;
};

// Keeps only days with a complete forecast vector in every provider and a
// complete actual vector.
AlignedDataset align(const std::vector<std::pair<std::string, RawSeries>>& providers,
                     const RawSeries& actuals);

// Runs assimilate() on every retained forecast, in place.
void apply_assimilation(AlignedDataset& dataset, std::size_t window);

// Seeded deterministic split (splitmix64 Fisher-Yates over the sorted day
// ids). Same seed, same split, on every platform.
std::pair<AlignedDataset, AlignedDataset>
split_train_test(const AlignedDataset& dataset, std::size_t train_count, std::uint64_t seed);

std::pair<AlignedDataset, AlignedDataset>
split_train_test_fraction(const AlignedDataset& dataset, double train_fraction,
                          std::uint64_t seed);

} // namespace windband
