#include "windband/combination.hpp"

#include <algorithm>
#include <cmath>

#include "windband/errors.hpp"

namespace windband {

DayPair::DayPair(DayRecord a, DayRecord b) : first(std::move(a)), second(std::move(b)) {
    if (first.day_id != second.day_id)
        throw ValidationError("DayPair: mismatched day ids " + first.day_id + " / " +
                              second.day_id);
    if (first.horizon() != second.horizon())
        throw DimensionError("DayPair " + first.day_id + ": mismatched horizons");
    if (first.actual != second.actual)
        throw ValidationError("DayPair " + first.day_id +
                              ": providers must share the same actual trajectory");
}

CombinedBand combine(const DayRecord& day1, const BandCoefficients& coeffs1,
                     const DayRecord& day2, const BandCoefficients& coeffs2, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw ValidationError("alpha outside [0,1]: " + std::to_string(alpha));
    if (day1.day_id != day2.day_id)
        throw ValidationError("combine: mismatched day ids");
    const std::size_t T = day1.horizon();
    if (day2.horizon() != T || coeffs1.horizon() != T || coeffs2.horizon() != T)
        throw DimensionError("combine: mismatched horizons");
    if (day1.actual != day2.actual)
        throw ValidationError("combine: providers must share the same actual trajectory");

    CombinedBand out;
    out.alpha = alpha;
    out.day_id = day1.day_id;
    out.forecast.resize(T);
    out.lower.resize(T);
    out.upper.resize(T);
    const double beta = 1.0 - alpha;
    for (std::size_t t = 0; t < T; ++t) {
        const double p1 = day1.forecast[t], p2 = day2.forecast[t];
        out.forecast[t] = alpha * p1 + beta * p2;
        // Combine the untruncated limits, then truncate once.
        const double lo = alpha * (1.0 - coeffs1.x[t]) * p1 + beta * (1.0 - coeffs2.x[t]) * p2;
        const double hi = alpha * (1.0 + coeffs1.x[t]) * p1 + beta * (1.0 + coeffs2.x[t]) * p2;
        out.lower[t] = std::max(0.0, lo);
        out.upper[t] = std::min(1.0, hi);
        if (out.upper[t] < out.lower[t]) out.upper[t] = out.lower[t];
    }
    return out;
}

double combined_offband_energy(const DayRecord& day, const CombinedBand& band) {
    if (band.horizon() != day.horizon())
        throw DimensionError("combined_offband_energy: mismatched horizons");
    double sum = 0.0;
    for (std::size_t t = 0; t < day.horizon(); ++t) {
        const double w = day.actual[t];
        sum += std::max(w - band.upper[t], 0.0) + std::max(band.lower[t] - w, 0.0);
    }
    return sum / static_cast<double>(day.horizon());
}

const AlphaPoint* AlphaSearchResult::best() const {
    const AlphaPoint* out = nullptr;
    for (const AlphaPoint& p : points) {
        if (!p.feasible) continue;
        if (!out || p.mean_rel_width < out->mean_rel_width ||
            (p.mean_rel_width == out->mean_rel_width &&
             (p.atypical_fraction < out->atypical_fraction ||
              (p.atypical_fraction == out->atypical_fraction && p.alpha > out->alpha))))
            out = &p;
    }
    return out;
}

AlphaSearchResult alpha_search(const std::vector<DayPair>& pairs,
                               const BandCoefficients& coeffs1,
                               const BandCoefficients& coeffs2,
                               const std::vector<double>& alpha_grid, double theta,
                               double atypical_budget) {
    if (pairs.empty()) throw ValidationError("alpha_search: empty aligned day set");
    if (alpha_grid.empty()) throw ValidationError("alpha_search: empty alpha grid");
    for (double a : alpha_grid)
        if (a < 0.0 || a > 1.0)
            throw ValidationError("alpha_search: grid value outside [0,1]");

    AlphaSearchResult result;
    result.points.reserve(alpha_grid.size());
    const auto n = static_cast<double>(pairs.size());
    const auto T = static_cast<double>(pairs.front().first.horizon());

    for (double alpha : alpha_grid) {
        AlphaPoint point;
        point.alpha = alpha;
        double width_sum = 0.0;
        std::size_t atypical = 0;
        for (const DayPair& pair : pairs) {
            const CombinedBand band =
                combine(pair.first, coeffs1, pair.second, coeffs2, alpha);
            double width = 0.0;
            for (std::size_t t = 0; t < band.horizon(); ++t)
                width += band.upper[t] - band.lower[t];
            width_sum += width;
            if (combined_offband_energy(pair.first, band) > theta) ++atypical;
        }
        point.mean_abs_width = width_sum / n;
        point.mean_rel_width = point.mean_abs_width / T;
        point.atypical_fraction = static_cast<double>(atypical) / n;
        point.feasible = point.atypical_fraction <= atypical_budget;
        result.points.push_back(point);
    }

    if (const AlphaPoint* winner = result.best()) result.alpha_star = winner->alpha;
    return result;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    grid.reserve(101);
    for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

} // namespace windband
