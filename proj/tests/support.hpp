#pragma once

// Shared test fixtures: random instances, constraint certification and an
// explicit dual LP for the lambda=1 path.

#include <cmath>
#include <string>
#include <vector>

#include "windband/core.hpp"
#include "windband/optimizer.hpp"
#include "windband/simplex.hpp"
#include "windband/util.hpp"

namespace wbtest {

using namespace windband;

inline DayRecord random_day(SplitMix64& rng, std::size_t T, const std::string& id,
                            double zero_forecast_prob = 0.05) {
    std::vector<double> p(T), w(T);
    for (std::size_t t = 0; t < T; ++t) {
        p[t] = rng.next_double() < zero_forecast_prob ? 0.0 : rng.next_double();
        w[t] = rng.next_double();
    }
    return DayRecord(id, p, w);
}

inline std::vector<DayRecord> random_days(SplitMix64& rng, std::size_t n, std::size_t T,
                                          double zero_forecast_prob = 0.05) {
    std::vector<DayRecord> days;
    days.reserve(n);
    for (std::size_t d = 0; d < n; ++d)
        days.push_back(random_day(rng, T, iso_date_add("2016-01-01", static_cast<long>(d)),
                                  zero_forecast_prob));
    return days;
}

// Checks every Eq.-(1) constraint on a returned optimal solution, plus the
// closed-form z recovery and the off-band identity for regular days.
// Returns an empty string when everything holds within tol.
inline std::string certify(const BandProblem& problem, const BandSolution& sol,
                           double tol = 1e-6) {
    const std::size_t T = problem.horizon();
    const std::size_t D = problem.day_count();
    const auto& x = sol.coefficients.x;
    if (x.size() != T) return "x has wrong length";
    if (sol.regular_flags.size() != D || sol.violations.size() != D)
        return "per-day arrays have wrong length";

    std::size_t regular = 0;
    for (std::size_t d = 0; d < D; ++d) regular += sol.regular_flags[d] ? 1 : 0;
    if (regular < min_regular_days(problem)) return "constraint (iii) violated";

    double objective = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        if (x[t] < -tol) return "negative band coefficient";
        objective += problem.mean_profile.w_bar[t] * x[t];
    }
    if (std::abs(objective - sol.objective) > tol) return "objective mismatch";

    for (std::size_t d = 0; d < D; ++d) {
        const DayRecord& day = problem.days[d];
        const double y = sol.regular_flags[d] ? 1.0 : 0.0;
        double z_sum = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double z = sol.violations[d][t];
            if (z < -tol || z > 1.0 + tol) return "z outside [0,1]";
            const double p = day.forecast[t], w = day.actual[t];
            if (p * x[t] - y + z < std::abs(w - p) - 1.0 - tol)
                return "constraint (i) violated";
            if (sol.regular_flags[d]) {
                const double expect =
                    std::max({0.0, w - p * (1.0 + x[t]), p * (1.0 - x[t]) - w});
                if (std::abs(z - expect) > tol) return "z recovery mismatch";
            } else if (z != 0.0) {
                return "atypical day with nonzero z";
            }
            z_sum += z;
        }
        const double cap = static_cast<double>(T) * (problem.theta + 1.0 - y);
        if (z_sum > cap + tol) return "constraint (ii) violated";
        if (sol.regular_flags[d]) {
            const double off =
                offband_energy(day, band_limits(day.forecast, sol.coefficients));
            if (std::abs(off - z_sum / static_cast<double>(T)) > tol)
                return "offband energy != sum(z)/T on a regular day";
        }
    }
    return {};
}

// Explicit dual of the lambda=1 LP:
//   max sum(a*alpha) - T*theta*sum(beta)
//   s.t. sum_d b[d][t]*alpha[d][t] <= w_bar[t],  alpha[d][t] <= beta[d]
// The z<=1 caps never bind at a primal optimum (z* <= a <= 1), so this
// capless dual matches the solved primal exactly.
inline lp::LpResult solve_lambda1_dual(const BandProblem& problem) {
    const std::size_t T = problem.horizon();
    const std::size_t D = problem.day_count();
    lp::LinearProgram dual;
    std::vector<std::vector<int>> alpha(D, std::vector<int>(T));
    std::vector<int> beta(D);
    const double budget = static_cast<double>(T) * problem.theta;
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t t = 0; t < T; ++t) {
            const double a = std::abs(problem.days[d].actual[t] - problem.days[d].forecast[t]);
            alpha[d][t] = dual.add_var(-a, 0.0, lp::kInf); // min of the negated objective
        }
        beta[d] = dual.add_var(budget, 0.0, lp::kInf);
    }
    for (std::size_t t = 0; t < T; ++t) {
        lp::Row row;
        for (std::size_t d = 0; d < D; ++d)
            if (problem.days[d].forecast[t] > 0.0)
                row.terms.push_back({alpha[d][t], problem.days[d].forecast[t]});
        row.rhs = problem.mean_profile.w_bar[t];
        dual.add_row(std::move(row));
    }
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t t = 0; t < T; ++t) {
            lp::Row row;
            row.terms.push_back({alpha[d][t], 1.0});
            row.terms.push_back({beta[d], -1.0});
            row.rhs = 0.0;
            dual.add_row(std::move(row));
        }
    lp::LpResult res = lp::solve_lp(dual);
    res.objective = -res.objective; // back to the max form
    return res;
}

} // namespace wbtest
