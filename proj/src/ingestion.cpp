#include "windband/ingestion.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "windband/errors.hpp"
#include "windband/util.hpp"

namespace windband {

namespace {

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_index(const std::string& s, std::size_t& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

RawSeries parse_csv(const std::string& path, Units units, std::size_t horizon) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    RawSeries series;
    series.units = units;
    series.horizon = horizon;

    std::vector<std::string> issues;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(path + ": empty file", {});
    ++line_no;
    if (strip_cr(line) != "day_id,t,value")
        throw ParseError(path + ": unknown header '" + strip_cr(line) +
                             "', expected 'day_id,t,value'",
                         {path + ":1: bad header"});

    std::set<std::pair<std::string, std::size_t>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string clean = strip_cr(line);
        if (clean.empty()) continue;
        const std::vector<std::string> fields = split_fields(clean);
        const std::string where = path + ":" + std::to_string(line_no);
        if (fields.size() != 3) {
            issues.push_back(where + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
            continue;
        }
        RawRow row;
        row.day_id = fields[0];
        row.line = line_no;
        if (!is_iso_date(row.day_id)) {
            issues.push_back(where + ": day_id '" + fields[0] + "' is not an ISO-8601 date");
            continue;
        }
        if (!parse_index(fields[1], row.t)) {
            issues.push_back(where + ": non-integer t '" + fields[1] + "'");
            continue;
        }
        if (row.t >= horizon) {
            issues.push_back(where + ": t " + fields[1] + " outside [0," +
                             std::to_string(horizon - 1) + "]");
            continue;
        }
        if (!parse_double(fields[2], row.value)) {
            issues.push_back(where + ": non-numeric value '" + fields[2] + "'");
            continue;
        }
        if (units == Units::plf && (row.value < 0.0 || row.value > 1.0)) {
            issues.push_back(where + ": PLF value " + fields[2] + " outside [0,1]");
            continue;
        }
        if (units == Units::mw && row.value < 0.0) {
            issues.push_back(where + ": negative MW value " + fields[2]);
            continue;
        }
        if (!seen.emplace(row.day_id, row.t).second) {
            issues.push_back(where + ": duplicate sample for (" + row.day_id + ", t=" +
                             fields[1] + ")");
            continue;
        }
        series.rows.push_back(std::move(row));
    }

    if (!issues.empty())
        throw ParseError(path + ": " + std::to_string(issues.size()) + " malformed row(s); first: " +
                             issues.front(),
                         issues);
    return series;
}

std::map<std::string, double> parse_capacity_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::map<std::string, double> capacity;
    std::vector<std::string> issues;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError(path + ": empty file", {});
    ++line_no;
    if (strip_cr(line) != "day_id,capacity_mw")
        throw ParseError(path + ": unknown header, expected 'day_id,capacity_mw'",
                         {path + ":1: bad header"});

    while (std::getline(in, line)) {
        ++line_no;
        const std::string clean = strip_cr(line);
        if (clean.empty()) continue;
        const std::vector<std::string> fields = split_fields(clean);
        const std::string where = path + ":" + std::to_string(line_no);
        double value = 0.0;
        if (fields.size() != 2) {
            issues.push_back(where + ": expected 2 fields");
        } else if (!is_iso_date(fields[0])) {
            issues.push_back(where + ": bad day_id '" + fields[0] + "'");
        } else if (!parse_double(fields[1], value) || value <= 0.0) {
            issues.push_back(where + ": capacity must be a positive number");
        } else if (!capacity.emplace(fields[0], value).second) {
            issues.push_back(where + ": duplicate capacity for " + fields[0]);
        }
    }
    if (!issues.empty())
        throw ParseError(path + ": malformed capacity file", issues);
    return capacity;
}

RawSeries normalize_plf(const RawSeries& raw) {
    if (raw.units == Units::plf) return raw;
    RawSeries out = raw;
    out.units = Units::plf;
    for (RawRow& row : out.rows) {
        const auto it = raw.capacity_mw.find(row.day_id);
        if (it == raw.capacity_mw.end())
            throw ValidationError("no installed capacity for day " + row.day_id);
        if (row.value > it->second + 1e-9)
            throw ValidationError("day " + row.day_id + " t=" + std::to_string(row.t) +
                                  ": power " + format_num(row.value) + " MW exceeds capacity " +
                                  format_num(it->second) + " MW");
        row.value /= it->second;
        if (row.value > 1.0) row.value = 1.0;
    }
    return out;
}

std::vector<double> assimilate(const std::vector<double>& forecast, double actual_start,
                               std::size_t window) {
    if (window < 1) throw ValidationError("assimilation window must be >= 1");
    if (forecast.size() <= window)
        throw ValidationError("assimilation window must be shorter than the horizon");
    std::vector<double> out = forecast;
    const double correction = actual_start - forecast[0];
    for (std::size_t t = 0; t < window; ++t) {
        const double weight =
            static_cast<double>(window - t) / static_cast<double>(window);
        out[t] = std::clamp(forecast[t] + correction * weight, 0.0, 1.0);
    }
    out[0] = actual_start; // exact by construction, restated against rounding
    return out;
}

std::vector<DayRecord> AlignedDataset::day_records(const std::string& provider) const {
    const auto it = forecasts.find(provider);
    if (it == forecasts.end()) throw ValidationError("unknown provider " + provider);
    std::vector<DayRecord> out;
    out.reserve(day_ids.size());
    for (const std::string& day : day_ids)
        out.emplace_back(day, it->second.at(day), actuals.at(day));
    return out;
}

namespace {

// day -> hourly vector, keeping only complete days.
std::map<std::string, std::vector<double>> complete_days(const RawSeries& series,
                                                         std::size_t& dropped) {
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> grouped;
    for (const RawRow& row : series.rows) grouped[row.day_id].emplace_back(row.t, row.value);
    std::map<std::string, std::vector<double>> out;
    dropped = 0;
    for (auto& [day, samples] : grouped) {
        if (samples.size() != series.horizon) {
            ++dropped;
            continue;
        }
        std::vector<double> vec(series.horizon);
        for (const auto& [t, v] : samples) vec[t] = v;
        out.emplace(day, std::move(vec));
    }
    return out;
}

} // namespace

AlignedDataset align(const std::vector<std::pair<std::string, RawSeries>>& providers,
                     const RawSeries& actuals) {
    if (providers.empty()) throw ValidationError("align: need at least one provider");
    if (actuals.units != Units::plf)
        throw ValidationError("align: actuals must be normalized to PLF first");
    const std::size_t T = actuals.horizon;
    for (const auto& [name, series] : providers) {
        if (series.units != Units::plf)
            throw ValidationError("align: provider " + name + " must be normalized to PLF");
        if (series.horizon != T)
            throw DimensionError("align: provider " + name + " horizon " +
                                 std::to_string(series.horizon) + " != actuals horizon " +
                                 std::to_string(T));
    }

    AlignedDataset out;
    out.horizon = T;

    std::size_t dropped = 0;
    const auto actual_days = complete_days(actuals, dropped);
    out.dropped_incomplete["actuals"] = dropped;

    std::set<std::string> common;
    for (const auto& [day, vec] : actual_days) common.insert(day);

    std::map<std::string, std::map<std::string, std::vector<double>>> provider_days;
    for (const auto& [name, series] : providers) {
        if (provider_days.count(name))
            throw ValidationError("align: duplicate provider name " + name);
        out.provider_names.push_back(name);
        provider_days[name] = complete_days(series, dropped);
        out.dropped_incomplete[name] = dropped;
        std::set<std::string> next;
        for (const std::string& day : common)
            if (provider_days[name].count(day)) next.insert(day);
        common = std::move(next);
    }

    if (common.empty()) {
        std::string detail = "align: no day is complete in every series (";
        detail += "actuals: " + std::to_string(actual_days.size()) + " complete";
        for (const auto& [name, days] : provider_days)
            detail += ", " + name + ": " + std::to_string(days.size()) + " complete";
        detail += ")";
        throw ValidationError(detail);
    }

    out.day_ids.assign(common.begin(), common.end());
    for (const std::string& day : out.day_ids) {
        out.actuals[day] = actual_days.at(day);
        for (const auto& name : out.provider_names)
            out.forecasts[name][day] = provider_days[name].at(day);
    }
    return out;
}

void apply_assimilation(AlignedDataset& dataset, std::size_t window) {
    for (auto& [name, days] : dataset.forecasts)
        for (auto& [day, forecast] : days)
            forecast = assimilate(forecast, dataset.actuals.at(day)[0], window);
}

std::pair<AlignedDataset, AlignedDataset>
split_train_test(const AlignedDataset& dataset, std::size_t train_count, std::uint64_t seed) {
    if (train_count >= dataset.day_count())
        throw ValidationError("train size " + std::to_string(train_count) +
                              " must be smaller than the dataset (" +
                              std::to_string(dataset.day_count()) + " days)");

    // Fisher-Yates over the sorted ids with an explicit PRNG.
    std::vector<std::string> ids = dataset.day_ids;
    SplitMix64 rng(seed);
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[rng.next_below(i)]);

    const std::set<std::string> train_ids(ids.begin(),
                                          ids.begin() + static_cast<long>(train_count));

    auto subset = [&](bool in_train) {
        AlignedDataset part;
        part.horizon = dataset.horizon;
        part.provider_names = dataset.provider_names;
        for (const std::string& day : dataset.day_ids) {
            if ((train_ids.count(day) > 0) != in_train) continue;
            part.day_ids.push_back(day);
            part.actuals[day] = dataset.actuals.at(day);
            for (const auto& name : dataset.provider_names)
                part.forecasts[name][day] = dataset.forecasts.at(name).at(day);
        }
        return part;
    };
    return {subset(true), subset(false)};
}

std::pair<AlignedDataset, AlignedDataset>
split_train_test_fraction(const AlignedDataset& dataset, double train_fraction,
                          std::uint64_t seed) {
    if (train_fraction < 0.0 || train_fraction >= 1.0)
        throw ValidationError("train fraction must be in [0,1)");
    const auto count = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(dataset.day_count())));
    return split_train_test(dataset, count, seed);
}

} // namespace windband
