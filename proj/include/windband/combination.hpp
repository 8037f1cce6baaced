#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windband/core.hpp"

namespace windband {

// Two providers' records for the same day: identical day id, horizon and
// actual trajectory, provider-specific forecasts.
struct DayPair {
    DayRecord first;
    DayRecord second;

    DayPair(DayRecord a, DayRecord b);
};

// Convex combination of two forecasts and their bands for one day.
// Limits are combined untruncated and truncated once at the end, which
// makes the convex width estimate exact before truncation.
struct CombinedBand {
    double alpha = 0.0;
    std::string day_id;
    std::vector<double> forecast;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t horizon() const { return forecast.size(); }
};

CombinedBand combine(const DayRecord& day1, const BandCoefficients& coeffs1,
                     const DayRecord& day2, const BandCoefficients& coeffs2, double alpha);

// Off-band energy of a combined band against the shared actuals.
double combined_offband_energy(const DayRecord& day, const CombinedBand& band);

struct AlphaPoint {
    double alpha = 0.0;
    double atypical_fraction = 0.0;
    double mean_abs_width = 0.0;
    double mean_rel_width = 0.0;
    bool feasible = false; // atypical_fraction <= budget
};

struct AlphaSearchResult {
    std::optional<double> alpha_star; // empty: no grid point met the budget
    std::vector<AlphaPoint> points;   // one per grid value, in grid order

    const AlphaPoint* best() const;
};

// Grid search over alpha: among budget-feasible points picks the smallest
// mean relative width; ties break to lower atypical fraction, then larger
// alpha. Deterministic and independent of evaluation order.
AlphaSearchResult alpha_search(const std::vector<DayPair>& pairs,
                               const BandCoefficients& coeffs1,
                               const BandCoefficients& coeffs2,
                               const std::vector<double>& alpha_grid, double theta,
                               double atypical_budget);

// The 101-point grid {0.00, 0.01, ..., 1.00}.
std::vector<double> default_alpha_grid();

} // namespace windband
