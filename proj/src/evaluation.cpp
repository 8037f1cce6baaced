#include "windband/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "windband/errors.hpp"

namespace windband {

AtypicalIndicators::AtypicalIndicators(std::vector<std::string> ids, std::vector<int> flags_)
    : day_ids(std::move(ids)), flags(std::move(flags_)) {
    if (day_ids.size() != flags.size())
        throw DimensionError("indicator ids and flags differ in length");
    for (int f : flags)
        if (f != 0 && f != 1) throw ValidationError("indicator flags must be 0 or 1");
}

EvalReport evaluate_set(const std::vector<DayRecord>& days, const BandCoefficients& coeffs,
                        double theta) {
    if (days.empty()) throw ValidationError("evaluate_set: empty day set");
    EvalReport report;
    report.theta = theta;
    report.lambda = coeffs.lambda;
    report.n_days = days.size();
    report.per_day.reserve(days.size());

    double width_sum = 0.0;
    std::size_t atypical = 0;
    for (const DayRecord& day : days) {
        const BandLimits limits = band_limits(day.forecast, coeffs);
        EvalReport::PerDay row;
        row.day_id = day.day_id;
        row.offband_energy = offband_energy(day, limits);
        row.abs_width = band_width(day.forecast, coeffs).absolute;
        row.atypical = row.offband_energy > theta;
        width_sum += row.abs_width;
        atypical += row.atypical ? 1 : 0;
        report.per_day.push_back(std::move(row));
    }
    report.atypical_fraction = static_cast<double>(atypical) / static_cast<double>(days.size());
    report.mean_abs_width = width_sum / static_cast<double>(days.size());
    report.mean_rel_width = report.mean_abs_width / static_cast<double>(coeffs.horizon());
    return report;
}

AtypicalIndicators atypical_indicators(const EvalReport& report) {
    AtypicalIndicators out;
    out.day_ids.reserve(report.per_day.size());
    out.flags.reserve(report.per_day.size());
    for (const auto& row : report.per_day) {
        out.day_ids.push_back(row.day_id);
        out.flags.push_back(row.atypical ? 1 : 0);
    }
    return out;
}

double phi_from_rates(double p1, double p2, double p11) {
    const double denom = std::sqrt(p1 * (1.0 - p1) * p2 * (1.0 - p2));
    if (denom <= 0.0)
        throw ValidationError("phi correlation undefined: a marginal rate is 0 or 1");
    return (p11 - p1 * p2) / denom;
}

double phi_correlation(const AtypicalIndicators& a, const AtypicalIndicators& b) {
    if (a.day_ids.size() != b.day_ids.size() || a.day_ids != b.day_ids)
        throw ValidationError("phi correlation needs identical day ids in identical order");
    const std::size_t n = a.flags.size();
    if (n < 2) throw ValidationError("phi correlation needs at least two days");
    double n1 = 0, n2 = 0, n11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        n1 += a.flags[i];
        n2 += b.flags[i];
        n11 += a.flags[i] * b.flags[i];
    }
    const double inv = 1.0 / static_cast<double>(n);
    return phi_from_rates(n1 * inv, n2 * inv, n11 * inv);
}

Histogram histogram(const std::vector<double>& values, std::size_t n_bins) {
    if (values.empty()) throw ValidationError("histogram: empty input");
    if (n_bins < 1) throw ValidationError("histogram: need at least one bin");

    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *min_it, hi = *max_it;

    Histogram h;
    double total = 0.0;
    for (double v : values) total += v;

    if (hi <= lo) {
        Histogram::Bin bin{lo, hi, values.size(), 1.0};
        h.bins.push_back(bin);
    } else {
        const double width = (hi - lo) / static_cast<double>(n_bins);
        h.bins.resize(n_bins);
        std::vector<double> mass(n_bins, 0.0);
        for (std::size_t i = 0; i < n_bins; ++i) {
            h.bins[i].lo = lo + width * static_cast<double>(i);
            h.bins[i].hi = i + 1 == n_bins ? hi : lo + width * static_cast<double>(i + 1);
        }
        for (double v : values) {
            auto i = static_cast<std::size_t>((v - lo) / width);
            if (i >= n_bins) i = n_bins - 1; // v == hi lands in the last bin
            ++h.bins[i].count;
            mass[i] += v;
        }
        for (std::size_t i = 0; i < n_bins; ++i)
            h.bins[i].mass_share = total != 0.0 ? mass[i] / total
                                                : static_cast<double>(h.bins[i].count) /
                                                      static_cast<double>(values.size());
    }

    // Nearest-rank quantiles used in the reporting narrative.
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.5, 0.66, 0.75}) {
        auto rank = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(sorted.size())));
        if (rank == 0) rank = 1;
        h.quantiles[q] = sorted[rank - 1];
    }
    return h;
}

std::vector<ParetoPoint> pareto_curve(const std::vector<DayRecord>& training_days,
                                      const MeanProfile& mean_profile, double lambda,
                                      const std::vector<double>& theta_grid,
                                      const SolverOptions& options) {
    if (theta_grid.empty()) throw ValidationError("pareto_curve: empty theta grid");
    for (std::size_t i = 1; i < theta_grid.size(); ++i)
        if (theta_grid[i] <= theta_grid[i - 1])
            throw ValidationError("pareto_curve: theta grid must be strictly increasing");

    std::vector<ParetoPoint> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        ParetoPoint point;
        point.theta = theta;
        const BandProblem problem =
            build_instance(training_days, mean_profile, theta, lambda);
        const BandSolution sol = solve(problem, options);
        point.status = sol.status;
        point.objective = sol.objective;
        if (sol.has_solution()) {
            double width_sum = 0.0;
            for (const DayRecord& day : training_days)
                width_sum += band_width(day.forecast, sol.coefficients).absolute;
            point.mean_abs_width = width_sum / static_cast<double>(training_days.size());
            point.mean_rel_width =
                point.mean_abs_width / static_cast<double>(mean_profile.horizon());
        }
        out.push_back(point);
    }
    return out;
}

} // namespace windband
