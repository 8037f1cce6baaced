#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windband/core.hpp"
#include "windband/optimizer.hpp"

namespace windband {

// Out-of-sample assessment of a trained band over a day set.
struct EvalReport {
    struct PerDay {
        std::string day_id;
        double offband_energy = 0.0;
        double abs_width = 0.0;
        bool atypical = false;
    };

    double theta = 0.0;
    double lambda = 1.0;
    std::size_t n_days = 0;
    double atypical_fraction = 0.0;
    double mean_abs_width = 0.0;
    double mean_rel_width = 0.0;
    std::vector<PerDay> per_day;
};

// Binary atypical indicators for one provider, aligned by day id.
struct AtypicalIndicators {
    std::vector<std::string> day_ids;
    std::vector<int> flags; // 1 = atypical

    AtypicalIndicators() = default;
    AtypicalIndicators(std::vector<std::string> ids, std::vector<int> flags_);
};

// Applies the band to every day; a day is atypical when its off-band
// energy strictly exceeds theta.
EvalReport evaluate_set(const std::vector<DayRecord>& days, const BandCoefficients& coeffs,
                        double theta);

AtypicalIndicators atypical_indicators(const EvalReport& report);

// Phi coefficient between two Bernoulli indicator sequences.
double phi_correlation(const AtypicalIndicators& a, const AtypicalIndicators& b);

// Same estimator from marginal rates and the joint rate directly.
double phi_from_rates(double p1, double p2, double p11);

struct Histogram {
    struct Bin {
        double lo = 0.0;
        double hi = 0.0;
        std::size_t count = 0;
        double mass_share = 0.0; // share of the value sum landing in this bin
    };
    std::vector<Bin> bins;
    std::map<double, double> quantiles; // nearest-rank, keys 0.5 / 0.66 / 0.75
};

Histogram histogram(const std::vector<double>& values, std::size_t n_bins);

struct ParetoPoint {
    double theta = 0.0;
    SolveStatus status = SolveStatus::iteration_limit;
    double mean_abs_width = 0.0;
    double mean_rel_width = 0.0;
    double objective = 0.0;
};

// One solve per grid point over the same training days and mean profile;
// widths are measured on the training set. Failed points are kept in the
// output with their status.
std::vector<ParetoPoint> pareto_curve(const std::vector<DayRecord>& training_days,
                                      const MeanProfile& mean_profile, double lambda,
                                      const std::vector<double>& theta_grid,
                                      const SolverOptions& options = {});

} // namespace windband
