#include "windband/core.hpp"

#include <algorithm>
#include <cmath>

#include "windband/errors.hpp"

namespace windband {

namespace {

void check_plf_vector(const std::vector<double>& v, const char* name) {
    for (double e : v) {
        if (!std::isfinite(e) || e < -kPlfTol || e > 1.0 + kPlfTol)
            throw ValidationError(std::string(name) + " value outside [0,1]: " +
                                  std::to_string(e));
    }
}

} // namespace

DayRecord::DayRecord(std::string id, std::vector<double> fc, std::vector<double> ac)
    : day_id(std::move(id)), forecast(std::move(fc)), actual(std::move(ac)) {
    if (forecast.size() != actual.size())
        throw DimensionError("DayRecord " + day_id + ": forecast length " +
                             std::to_string(forecast.size()) + " != actual length " +
                             std::to_string(actual.size()));
    if (forecast.size() < 2)
        throw ValidationError("DayRecord " + day_id + ": horizon must be >= 2");
    check_plf_vector(forecast, "forecast");
    check_plf_vector(actual, "actual");
}

BandCoefficients::BandCoefficients(std::vector<double> x_, double theta_, double lambda_)
    : x(std::move(x_)), theta(theta_), lambda(lambda_) {
    if (theta < 0.0 || theta > 1.0)
        throw ValidationError("theta outside [0,1]: " + std::to_string(theta));
    if (lambda < 0.0 || lambda > 1.0)
        throw ValidationError("lambda outside [0,1]: " + std::to_string(lambda));
    for (double e : x)
        if (!std::isfinite(e) || e < -kPlfTol)
            throw ValidationError("band coefficient must be >= 0, got " + std::to_string(e));
}

MeanProfile::MeanProfile(std::vector<double> values) : w_bar(std::move(values)) {
    check_plf_vector(w_bar, "mean profile");
}

BandLimits band_limits(std::span<const double> forecast, const BandCoefficients& coeffs) {
    if (forecast.size() != coeffs.x.size())
        throw DimensionError("band_limits: forecast length " + std::to_string(forecast.size()) +
                             " != coefficient length " + std::to_string(coeffs.x.size()));
    BandLimits out;
    out.lower.resize(forecast.size());
    out.upper.resize(forecast.size());
    for (std::size_t t = 0; t < forecast.size(); ++t) {
        const double p = forecast[t];
        out.lower[t] = std::max(0.0, (1.0 - coeffs.x[t]) * p);
        out.upper[t] = std::min(1.0, (1.0 + coeffs.x[t]) * p);
    }
    return out;
}

double offband_energy(const DayRecord& day, const BandLimits& limits) {
    const std::size_t T = day.horizon();
    if (limits.lower.size() != T || limits.upper.size() != T)
        throw DimensionError("offband_energy: limits horizon " +
                             std::to_string(limits.lower.size()) + " != day horizon " +
                             std::to_string(T));
    double sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const double w = day.actual[t];
        sum += std::max(w - limits.upper[t], 0.0) + std::max(limits.lower[t] - w, 0.0);
    }
    return sum / static_cast<double>(T);
}

BandWidth band_width(std::span<const double> forecast, const BandCoefficients& coeffs) {
    const BandLimits lim = band_limits(forecast, coeffs);
    BandWidth w;
    for (std::size_t t = 0; t < lim.lower.size(); ++t)
        w.absolute += lim.upper[t] - lim.lower[t];
    w.relative = w.absolute / static_cast<double>(lim.lower.size());
    return w;
}

} // namespace windband
