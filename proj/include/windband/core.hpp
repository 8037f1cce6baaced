#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace windband {

// Absolute tolerance for comparisons against the [0,1] PLF bounds.
inline constexpr double kPlfTol = 1e-9;

// One day's point forecast and realized generation over the horizon,
// both as plant load factors in [0,1]. forecast[0] == actual[0] holds
// once the assimilation step has run; construction does not require it
// so that raw (pre-assimilation) records and hand-built optimizer
// fixtures remain representable.
struct DayRecord {
    std::string day_id;             // ISO-8601 calendar date
    std::vector<double> forecast;   // p_t, hourly PLF
    std::vector<double> actual;     // w_t, hourly PLF

    DayRecord(std::string id, std::vector<double> fc, std::vector<double> ac);

    std::size_t horizon() const { return forecast.size(); }

    // Paper consistency condition: the first sample is measured, not
    // forecast. Enforced by ingestion, checked here on demand.
    bool assimilated() const { return forecast[0] == actual[0]; }
};

// Per-hour relative half-widths x_t >= 0 defining a band around any
// forecast, plus the (theta, lambda) the training run used.
struct BandCoefficients {
    std::vector<double> x;
    double theta = 0.0;
    double lambda = 1.0;

    BandCoefficients() = default;
    BandCoefficients(std::vector<double> x_, double theta_, double lambda_);

    std::size_t horizon() const { return x.size(); }
};

// Hourly mean PLF over a historical day set; the objective weights.
struct MeanProfile {
    std::vector<double> w_bar;

    MeanProfile() = default;
    explicit MeanProfile(std::vector<double> values);

    std::size_t horizon() const { return w_bar.size(); }
};

// Truncated band limits, 0 <= lower_t <= upper_t <= 1.
struct BandLimits {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t horizon() const { return lower.size(); }
};

struct BandWidth {
    double absolute = 0.0; // sum over hours of (upper - lower), in PLF*hours
    double relative = 0.0; // absolute / T
};

// lower_t = max(0, (1-x_t) p_t), upper_t = min(1, (1+x_t) p_t).
BandLimits band_limits(std::span<const double> forecast, const BandCoefficients& coeffs);

// Time-normalized off-band energy 1 - R^d: mean over hours of the
// amount by which the actual trajectory escapes the band.
double offband_energy(const DayRecord& day, const BandLimits& limits);

// Absolute and relative band area around one forecast.
BandWidth band_width(std::span<const double> forecast, const BandCoefficients& coeffs);

} // namespace windband
