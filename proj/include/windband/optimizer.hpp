#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "windband/core.hpp"

namespace windband {

// A materialized band-minimization instance: training days D, objective
// weights w_bar over the historical record, and the (theta, lambda) knobs.
struct BandProblem {
    std::vector<DayRecord> days;
    MeanProfile mean_profile;
    double theta = 0.0;
    double lambda = 1.0;

    std::size_t horizon() const { return mean_profile.horizon(); }
    std::size_t day_count() const { return days.size(); }
};

struct SolverOptions {
    // Feasibility and optimality tolerance for returned solutions.
    // Branch-and-bound prunes at tolerance/10 so reported objectives sit
    // within `tolerance` of the true optimum in absolute terms.
    double tolerance = 1e-6;
    long node_limit = 100000;
    double time_limit_seconds = 1e18;
    std::optional<double> x_cap;       // optional upper bound on every x_t
    int max_cut_rounds = 400;          // per relaxation solve
    long lp_iteration_limit = 2000000; // per master LP
};

enum class SolveStatus { optimal, infeasible, iteration_limit };

const char* to_string(SolveStatus s);

struct BandSolution {
    BandCoefficients coefficients;
    std::vector<int> regular_flags;              // y_d per training day
    std::vector<std::vector<double>> violations; // z[d][t]; zeros on atypical days
    double objective = 0.0;
    SolveStatus status = SolveStatus::iteration_limit;
    double solve_seconds = 0.0;

    // Search diagnostics.
    double lower_bound = 0.0;
    long nodes = 0;
    long lp_iterations = 0;
    long cuts_generated = 0;
    std::optional<std::size_t> infeasible_day; // witness index into problem.days
    std::vector<std::string> warnings;

    bool has_solution() const { return !coefficients.x.empty(); }
};

// Continuous relaxation of a node: y free in [0,1] where not fixed.
struct LpSolution {
    enum class Status { optimal, infeasible, iteration_limit };
    Status status = Status::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> y; // includes fixed entries
    long lp_iterations = 0;
};

// Arithmetic mean of the actual PLF per hour over a day set.
MeanProfile mean_profile_of(const std::vector<DayRecord>& days);

BandProblem build_instance(std::vector<DayRecord> days,
                           const std::vector<DayRecord>& mean_source, double theta,
                           double lambda);
BandProblem build_instance(std::vector<DayRecord> days, MeanProfile mean_profile,
                           double theta, double lambda);

// Minimum number of regular days, ceil(lambda * |D|).
std::size_t min_regular_days(const BandProblem& problem);

// Hours with p_t == 0 but w_t > 0: their violation is irreducible at any
// finite x. Reported so data problems are visible in train logs.
std::vector<std::pair<std::size_t, std::size_t>> irreducible_hours(const BandProblem& problem);

// Exact solve of the mixed-integer model: pure LP when lambda == 1,
// branch-and-bound over the day-selection binaries otherwise.
BandSolution solve(const BandProblem& problem, const SolverOptions& options = {});

// One bounding step: fixed_y entries are -1 (free), 0 or 1. An empty span
// leaves every day free.
LpSolution solve_relaxation(const BandProblem& problem,
                            std::span<const signed char> fixed_y = {},
                            const SolverOptions& options = {});

// Enumerates every admissible y assignment (|D| <= 12) and returns the
// best per-assignment LP; verification oracle for solve().
BandSolution brute_force_oracle(const BandProblem& problem,
                                const SolverOptions& options = {});

} // namespace windband
