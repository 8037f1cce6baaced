#include "windband/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "windband/errors.hpp"
#include "windband/simplex.hpp"

namespace windband {

namespace {

constexpr double kSepTol = 1e-9;    // cut violation threshold
constexpr double kCoverTol = 1e-9;  // day counts as covered at the LP point
constexpr double kSnapTol = 1e-11;  // x entries below this collapse to 0

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Precomputed instance arrays: a[d][t] = |w - p|, b[d][t] = p.
struct InstanceData {
    std::size_t T = 0;
    std::size_t D = 0;
    double budget = 0.0; // T * theta
    double cap = lp::kInf;
    std::size_t min_regular = 0;
    std::vector<std::vector<double>> a;
    std::vector<std::vector<double>> b;
    std::vector<double> irreducible; // residual violation at x = cap
};

InstanceData prepare(const BandProblem& problem, const SolverOptions& options) {
    InstanceData data;
    data.T = problem.horizon();
    data.D = problem.day_count();
    data.budget = static_cast<double>(data.T) * problem.theta;
    data.cap = options.x_cap.value_or(lp::kInf);
    data.min_regular = min_regular_days(problem);
    data.a.resize(data.D);
    data.b.resize(data.D);
    data.irreducible.assign(data.D, 0.0);
    for (std::size_t d = 0; d < data.D; ++d) {
        const DayRecord& day = problem.days[d];
        data.a[d].resize(data.T);
        data.b[d].resize(data.T);
        for (std::size_t t = 0; t < data.T; ++t) {
            data.a[d][t] = std::abs(day.actual[t] - day.forecast[t]);
            data.b[d][t] = day.forecast[t];
            double term;
            if (data.b[d][t] > 0.0)
                term = std::isfinite(data.cap)
                           ? std::max(0.0, data.a[d][t] - data.b[d][t] * data.cap)
                           : 0.0;
            else
                term = data.a[d][t];
            data.irreducible[d] += term;
        }
    }
    return data;
}

// A violated-subset cut for one day. Valid at every node: it is the
// z-elimination of constraints (i)-(ii) restricted to `hours`.
struct Cut {
    std::size_t day;
    std::vector<std::uint16_t> hours;
    double a_sum; // sum of a[day][t] over hours
};

class CutPool {
public:
    // Returns the index of the cut, existing or newly added.
    std::size_t add(std::size_t day, std::vector<std::uint16_t> hours, double a_sum) {
        auto& per_day = seen_[day];
        auto it = per_day.find(hours);
        if (it != per_day.end()) return it->second;
        cuts_.push_back(Cut{day, hours, a_sum});
        per_day.emplace(std::move(hours), cuts_.size() - 1);
        return cuts_.size() - 1;
    }

    const Cut& operator[](std::size_t i) const { return cuts_[i]; }
    std::size_t size() const { return cuts_.size(); }

private:
    std::vector<Cut> cuts_;
    std::map<std::size_t, std::map<std::vector<std::uint16_t>, std::size_t>> seen_;
};

struct NodeResult {
    LpSolution::Status status = LpSolution::Status::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> y; // full vector, fixings substituted
    bool converged = false;
    std::vector<std::size_t> binding_cuts; // pool indices tight at the optimum
    long lp_iterations = 0;
};

// Solves the continuous relaxation at one node by cut generation on the
// master LP in (x, y_free) space. The master objective is a valid lower
// bound even before the separation loop converges.
NodeResult solve_node(const InstanceData& data, const MeanProfile& mean,
                      std::span<const signed char> fixed,
                      std::span<const std::size_t> warm_cuts, CutPool& pool,
                      const SolverOptions& options) {
    NodeResult out;
    const std::size_t T = data.T;
    const std::size_t D = data.D;

    std::size_t n_fixed1 = 0, n_fixed0 = 0;
    for (std::size_t d = 0; d < D; ++d) {
        if (fixed[d] == 1) ++n_fixed1;
        if (fixed[d] == 0) ++n_fixed0;
    }
    // Cardinality can no longer be met, or a forced-regular day can never
    // fit inside the budget: prune without an LP.
    if (D - n_fixed0 < data.min_regular) {
        out.status = LpSolution::Status::infeasible;
        return out;
    }
    for (std::size_t d = 0; d < D; ++d) {
        if (fixed[d] == 1 && data.irreducible[d] > data.budget + kSepTol) {
            out.status = LpSolution::Status::infeasible;
            return out;
        }
    }

    lp::LinearProgram master;
    for (std::size_t t = 0; t < T; ++t)
        master.add_var(mean.w_bar[t], 0.0, data.cap);
    std::vector<int> y_col(D, -1);
    for (std::size_t d = 0; d < D; ++d)
        if (fixed[d] < 0) y_col[d] = master.add_var(0.0, 0.0, 1.0);

    const long needed = static_cast<long>(data.min_regular) - static_cast<long>(n_fixed1);
    if (needed > 0) {
        lp::Row row;
        for (std::size_t d = 0; d < D; ++d)
            if (y_col[d] >= 0) row.terms.push_back({y_col[d], -1.0});
        row.rhs = -static_cast<double>(needed);
        master.add_row(std::move(row));
    }
    const std::size_t fixed_rows = master.rows.size();

    // Rows currently in the master, parallel to master.rows beyond the
    // cardinality row.
    std::vector<std::size_t> row_pool_idx;
    std::vector<int> row_round;
    std::set<std::size_t> in_master;

    auto materialize = [&](std::size_t pool_idx, int round) {
        const Cut& cut = pool[pool_idx];
        if (fixed[cut.day] == 0) return;      // discarded day: cut is vacuous
        if (in_master.count(pool_idx)) return;
        lp::Row row;
        for (std::uint16_t t : cut.hours)
            if (data.b[cut.day][t] > 0.0)
                row.terms.push_back({static_cast<int>(t), -data.b[cut.day][t]});
        const double relax = static_cast<double>(cut.hours.size() + T);
        if (fixed[cut.day] < 0) {
            row.terms.push_back({y_col[cut.day], relax});
            row.rhs = data.budget - cut.a_sum + relax;
        } else {
            row.rhs = data.budget - cut.a_sum;
        }
        master.add_row(std::move(row));
        row_pool_idx.push_back(pool_idx);
        row_round.push_back(round);
        in_master.insert(pool_idx);
    };

    for (std::size_t idx : warm_cuts) materialize(idx, 0);

    std::vector<double> x(T, 0.0), y(D, 0.0);
    lp::LpResult lpres;
    bool have_lp = false;

    for (int round = 1; round <= options.max_cut_rounds; ++round) {
        lpres = lp::solve_lp(master, options.lp_iteration_limit);
        out.lp_iterations += lpres.iterations;
        if (lpres.status == lp::LpStatus::infeasible) {
            out.status = LpSolution::Status::infeasible;
            return out;
        }
        if (lpres.status != lp::LpStatus::optimal) {
            out.status = LpSolution::Status::iteration_limit;
            return out;
        }
        have_lp = true;
        for (std::size_t t = 0; t < T; ++t) x[t] = std::max(0.0, lpres.solution[t]);
        for (std::size_t d = 0; d < D; ++d) {
            if (fixed[d] >= 0)
                y[d] = fixed[d];
            else
                y[d] = std::clamp(lpres.solution[y_col[d]], 0.0, 1.0);
        }

        // Separation: most violated subset per day.
        bool added = false;
        for (std::size_t d = 0; d < D; ++d) {
            if (fixed[d] == 0) continue;
            const double slack_d = 1.0 - y[d];
            std::vector<std::uint16_t> hours;
            double a_sum = 0.0, lhs = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                const double l = data.a[d][t] - data.b[d][t] * x[t] - slack_d;
                if (l > 1e-12) {
                    hours.push_back(static_cast<std::uint16_t>(t));
                    a_sum += data.a[d][t];
                    lhs += l;
                }
            }
            if (hours.empty()) continue;
            if (lhs > data.budget + static_cast<double>(T) * slack_d + kSepTol) {
                // The positive-part subset is the most violated one, so a
                // clean separation pass certifies relaxation feasibility.
                const std::size_t idx = pool.add(d, std::move(hours), a_sum);
                if (!in_master.count(idx)) {
                    materialize(idx, round);
                    added = true;
                }
            }
        }
        if (!added) {
            out.converged = true;
            break;
        }

        // Drop stale slack cuts so the master stays small.
        if (master.rows.size() > fixed_rows + 64) {
            std::vector<lp::Row> kept_rows(master.rows.begin(),
                                           master.rows.begin() + fixed_rows);
            std::vector<std::size_t> kept_idx;
            std::vector<int> kept_round;
            for (std::size_t r = fixed_rows; r < master.rows.size(); ++r) {
                const lp::Row& row = master.rows[r];
                double lhs = 0.0;
                for (const lp::Term& term : row.terms)
                    lhs += term.coef * lpres.solution[term.col];
                const bool recent = row_round[r - fixed_rows] >= round - 1;
                if (recent || lhs >= row.rhs - 1e-6) {
                    kept_rows.push_back(row);
                    kept_idx.push_back(row_pool_idx[r - fixed_rows]);
                    kept_round.push_back(row_round[r - fixed_rows]);
                } else {
                    in_master.erase(row_pool_idx[r - fixed_rows]);
                }
            }
            master.rows = std::move(kept_rows);
            row_pool_idx = std::move(kept_idx);
            row_round = std::move(kept_round);
        }
    }

    if (!have_lp) {
        out.status = LpSolution::Status::iteration_limit;
        return out;
    }

    out.status = out.converged ? LpSolution::Status::optimal
                               : LpSolution::Status::iteration_limit;
    out.x = x;
    out.y = y;
    double obj = 0.0;
    for (std::size_t t = 0; t < T; ++t) obj += mean.w_bar[t] * x[t];
    out.objective = obj;

    for (std::size_t r = fixed_rows; r < master.rows.size(); ++r) {
        const lp::Row& row = master.rows[r];
        double lhs = 0.0;
        for (const lp::Term& term : row.terms) lhs += term.coef * lpres.solution[term.col];
        if (lhs >= row.rhs - 1e-7) out.binding_cuts.push_back(row_pool_idx[r - fixed_rows]);
    }
    return out;
}

// Per-day violation of the full off-band budget at a given x.
double day_violation(const InstanceData& data, std::size_t d, std::span<const double> x) {
    double v = 0.0;
    for (std::size_t t = 0; t < data.T; ++t)
        v += std::max(0.0, data.a[d][t] - data.b[d][t] * x[t]);
    return v;
}

BandSolution assemble_solution(const BandProblem& problem, const InstanceData& data,
                               std::vector<double> x, const std::vector<int>& y,
                               SolveStatus status) {
    BandSolution sol;
    for (double& v : x)
        if (v < kSnapTol) v = 0.0;
    sol.coefficients = BandCoefficients(x, problem.theta, problem.lambda);
    sol.regular_flags = y;
    sol.violations.resize(data.D);
    double obj = 0.0;
    for (std::size_t t = 0; t < data.T; ++t) obj += problem.mean_profile.w_bar[t] * x[t];
    sol.objective = obj;
    sol.status = status;
    for (std::size_t d = 0; d < data.D; ++d) {
        sol.violations[d].assign(data.T, 0.0);
        if (!y[d]) continue;
        for (std::size_t t = 0; t < data.T; ++t)
            sol.violations[d][t] = std::max(0.0, data.a[d][t] - data.b[d][t] * x[t]);
    }
    return sol;
}

// Complete infeasibility test: a day whose irreducible violation exceeds
// the budget can never be regular; the instance is infeasible iff too many
// days are in that state. Returns the witness when infeasible.
std::optional<std::size_t> infeasibility_witness(const InstanceData& data) {
    std::size_t forced_atypical = 0;
    std::size_t worst = 0;
    for (std::size_t d = 0; d < data.D; ++d) {
        if (data.irreducible[d] > data.budget + kSepTol) ++forced_atypical;
        if (data.irreducible[d] > data.irreducible[worst]) worst = d;
    }
    if (forced_atypical > data.D - data.min_regular) return worst;
    return std::nullopt;
}

struct BnbNode {
    double bound_est;
    long order;
    std::vector<signed char> fixed;
    std::vector<std::size_t> warm_cuts;
};

struct BnbNodeCompare {
    bool operator()(const BnbNode& lhs, const BnbNode& rhs) const {
        if (lhs.bound_est != rhs.bound_est) return lhs.bound_est > rhs.bound_est;
        return lhs.order > rhs.order; // earlier nodes first on ties
    }
};

void validate_problem(const BandProblem& problem) {
    if (problem.days.empty()) throw ValidationError("BandProblem has no training days");
    for (const DayRecord& day : problem.days)
        if (day.horizon() != problem.horizon())
            throw DimensionError("day " + day.day_id + " horizon " +
                                 std::to_string(day.horizon()) +
                                 " != instance horizon " +
                                 std::to_string(problem.horizon()));
    if (problem.theta < 0.0 || problem.theta > 1.0)
        throw ValidationError("theta outside [0,1]");
    if (problem.lambda < 0.0 || problem.lambda > 1.0)
        throw ValidationError("lambda outside [0,1]");
}

} // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::iteration_limit: return "iteration-limit";
    }
    return "unknown";
}

MeanProfile mean_profile_of(const std::vector<DayRecord>& days) {
    if (days.empty()) throw ValidationError("mean profile over an empty day set");
    const std::size_t T = days[0].horizon();
    std::vector<double> mean(T, 0.0);
    for (const DayRecord& day : days) {
        if (day.horizon() != T)
            throw DimensionError("mixed horizons in mean profile source");
        for (std::size_t t = 0; t < T; ++t) mean[t] += day.actual[t];
    }
    for (double& v : mean) v /= static_cast<double>(days.size());
    return MeanProfile(std::move(mean));
}

BandProblem build_instance(std::vector<DayRecord> days,
                           const std::vector<DayRecord>& mean_source, double theta,
                           double lambda) {
    return build_instance(std::move(days), mean_profile_of(mean_source), theta, lambda);
}

BandProblem build_instance(std::vector<DayRecord> days, MeanProfile mean_profile,
                           double theta, double lambda) {
    BandProblem problem;
    problem.days = std::move(days);
    problem.mean_profile = std::move(mean_profile);
    problem.theta = theta;
    problem.lambda = lambda;
    if (problem.mean_profile.horizon() == 0 && !problem.days.empty())
        problem.mean_profile = mean_profile_of(problem.days);
    validate_problem(problem);
    return problem;
}

std::size_t min_regular_days(const BandProblem& problem) {
    const double raw = problem.lambda * static_cast<double>(problem.day_count());
    const auto k = static_cast<long>(std::ceil(raw - 1e-9));
    return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(problem.day_count())));
}

std::vector<std::pair<std::size_t, std::size_t>> irreducible_hours(const BandProblem& problem) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t d = 0; d < problem.day_count(); ++d)
        for (std::size_t t = 0; t < problem.horizon(); ++t)
            if (problem.days[d].forecast[t] <= 0.0 && problem.days[d].actual[t] > 0.0)
                out.emplace_back(d, t);
    return out;
}

LpSolution solve_relaxation(const BandProblem& problem, std::span<const signed char> fixed_y,
                            const SolverOptions& options) {
    validate_problem(problem);
    const InstanceData data = prepare(problem, options);
    std::vector<signed char> fixed(data.D, -1);
    if (!fixed_y.empty()) {
        if (fixed_y.size() != data.D)
            throw DimensionError("fixed_y length != day count");
        std::copy(fixed_y.begin(), fixed_y.end(), fixed.begin());
    }
    CutPool pool;
    const NodeResult node = solve_node(data, problem.mean_profile, fixed, {}, pool, options);
    LpSolution out;
    out.status = node.status;
    out.lp_iterations = node.lp_iterations;
    if (node.status == LpSolution::Status::infeasible) return out;
    out.objective = node.objective;
    out.x = node.x;
    out.y = node.y;
    return out;
}

BandSolution solve(const BandProblem& problem, const SolverOptions& options) {
    validate_problem(problem);
    const auto t0 = Clock::now();
    const InstanceData data = prepare(problem, options);
    const double gap = options.tolerance * 0.1;

    BandSolution failure;
    failure.coefficients.theta = problem.theta;
    failure.coefficients.lambda = problem.lambda;

    if (auto witness = infeasibility_witness(data)) {
        failure.status = SolveStatus::infeasible;
        failure.infeasible_day = *witness;
        failure.solve_seconds = seconds_since(t0);
        return failure;
    }

    CutPool pool;
    long nodes = 0;
    long lp_iterations = 0;

    // Pure-LP path: lambda == 1 forces every day regular.
    if (data.min_regular == data.D) {
        std::vector<signed char> fixed(data.D, 1);
        const NodeResult node =
            solve_node(data, problem.mean_profile, fixed, {}, pool, options);
        lp_iterations = node.lp_iterations;
        if (node.status == LpSolution::Status::infeasible) {
            // Unreachable given the witness pre-check, kept as a safety net.
            failure.status = SolveStatus::infeasible;
            failure.infeasible_day = infeasibility_witness(data);
            failure.solve_seconds = seconds_since(t0);
            return failure;
        }
        if (node.status != LpSolution::Status::optimal) {
            failure.status = SolveStatus::iteration_limit;
            failure.lower_bound = node.objective;
            failure.lp_iterations = lp_iterations;
            failure.cuts_generated = static_cast<long>(pool.size());
            failure.solve_seconds = seconds_since(t0);
            return failure;
        }
        BandSolution sol = assemble_solution(problem, data, node.x,
                                             std::vector<int>(data.D, 1),
                                             SolveStatus::optimal);
        sol.lower_bound = sol.objective;
        sol.nodes = 1;
        sol.lp_iterations = lp_iterations;
        sol.cuts_generated = static_cast<long>(pool.size());
        sol.solve_seconds = seconds_since(t0);
        return sol;
    }

    // Branch and bound over the y binaries, best-bound-first.
    std::priority_queue<BnbNode, std::vector<BnbNode>, BnbNodeCompare> queue;
    long next_order = 0;
    queue.push(BnbNode{0.0, next_order++, std::vector<signed char>(data.D, -1), {}});

    bool have_incumbent = false;
    double incumbent_obj = std::numeric_limits<double>::infinity();
    std::vector<double> incumbent_x;
    std::vector<int> incumbent_y;
    bool budget_hit = false;  // node/time limit reached
    bool proven = true;       // no subtree was abandoned unresolved
    double abandoned_lb = std::numeric_limits<double>::infinity();

    while (!queue.empty()) {
        if (nodes >= options.node_limit || seconds_since(t0) > options.time_limit_seconds) {
            budget_hit = true;
            break;
        }
        BnbNode entry = queue.top();
        queue.pop();
        if (have_incumbent && entry.bound_est >= incumbent_obj - gap) {
            // Best-bound order: every remaining node is at least as bad.
            queue = {};
            break;
        }

        ++nodes;
        const NodeResult node = solve_node(data, problem.mean_profile, entry.fixed,
                                           entry.warm_cuts, pool, options);
        lp_iterations += node.lp_iterations;
        if (node.status == LpSolution::Status::infeasible) continue;
        if (node.x.empty()) {
            // Master LP never finished: abandon the subtree but remember
            // its inherited bound so the reported gap stays honest.
            proven = false;
            abandoned_lb = std::min(abandoned_lb, entry.bound_est);
            continue;
        }
        if (have_incumbent && node.objective >= incumbent_obj - gap) continue;
        const bool converged = node.status == LpSolution::Status::optimal;

        // Rounding: y never enters the objective, so whenever enough free
        // days already fit the budget at this x, the LP point itself is a
        // mixed-integer solution. On a converged node that closes the node
        // at its own bound.
        std::size_t n_fixed1 = 0;
        for (std::size_t d = 0; d < data.D; ++d)
            if (entry.fixed[d] == 1) ++n_fixed1;
        std::vector<std::size_t> covered_free;
        for (std::size_t d = 0; d < data.D; ++d)
            if (entry.fixed[d] < 0 &&
                day_violation(data, d, node.x) <= data.budget + kCoverTol)
                covered_free.push_back(d);
        const long needed = static_cast<long>(data.min_regular) - static_cast<long>(n_fixed1);
        const bool roundable = static_cast<long>(covered_free.size()) >= needed;
        if (roundable && node.objective < incumbent_obj - 1e-12) {
            std::vector<int> y(data.D, 0);
            for (std::size_t d = 0; d < data.D; ++d)
                if (entry.fixed[d] == 1) y[d] = 1;
            for (std::size_t d : covered_free) y[d] = 1;
            have_incumbent = true;
            incumbent_obj = node.objective;
            incumbent_x = node.x;
            incumbent_y = std::move(y);
        }
        if (roundable && converged) continue; // incumbent matches the node bound

        // Branch on the most fractional free day, lowest index on ties.
        std::size_t branch_day = data.D;
        double best_frac = -1.0;
        for (std::size_t d = 0; d < data.D; ++d) {
            if (entry.fixed[d] >= 0) continue;
            const double frac = 0.5 - std::abs(node.y[d] - 0.5);
            if (frac > best_frac + 1e-12) {
                best_frac = frac;
                branch_day = d;
            }
        }
        if (branch_day == data.D) continue; // fully fixed; nothing below

        for (const signed char value : {static_cast<signed char>(1), static_cast<signed char>(0)}) {
            BnbNode child;
            child.bound_est = node.objective;
            child.order = next_order++;
            child.fixed = entry.fixed;
            child.fixed[branch_day] = value;
            child.warm_cuts = node.binding_cuts;
            queue.push(std::move(child));
        }
    }

    double open_lb = abandoned_lb;
    if (!queue.empty()) open_lb = std::min(open_lb, queue.top().bound_est);
    const bool exhausted = queue.empty() && proven && !budget_hit;

    if (!have_incumbent) {
        // The witness pre-check passed, so the instance is feasible; reaching
        // this point without an incumbent means the search ran out of budget.
        failure.status = SolveStatus::iteration_limit;
        failure.nodes = nodes;
        failure.lp_iterations = lp_iterations;
        failure.cuts_generated = static_cast<long>(pool.size());
        failure.lower_bound = std::isfinite(open_lb) ? open_lb : 0.0;
        failure.solve_seconds = seconds_since(t0);
        return failure;
    }

    const SolveStatus status = exhausted ? SolveStatus::optimal : SolveStatus::iteration_limit;
    const double lb = exhausted ? incumbent_obj : std::min(incumbent_obj, open_lb);
    BandSolution sol = assemble_solution(problem, data, incumbent_x, incumbent_y, status);
    if (problem.lambda == 0.0)
        sol.warnings.push_back(
            "lambda = 0: every training day may be discarded; the empty band is optimal");
    sol.lower_bound = std::min(lb, sol.objective);
    sol.nodes = nodes;
    sol.lp_iterations = lp_iterations;
    sol.cuts_generated = static_cast<long>(pool.size());
    sol.solve_seconds = seconds_since(t0);
    return sol;
}

BandSolution brute_force_oracle(const BandProblem& problem, const SolverOptions& options) {
    validate_problem(problem);
    if (problem.day_count() > 12)
        throw ValidationError("brute_force_oracle refused: more than 12 days");
    const auto t0 = Clock::now();
    const InstanceData data = prepare(problem, options);

    BandSolution failure;
    failure.coefficients.theta = problem.theta;
    failure.coefficients.lambda = problem.lambda;

    if (auto witness = infeasibility_witness(data)) {
        failure.status = SolveStatus::infeasible;
        failure.infeasible_day = *witness;
        failure.solve_seconds = seconds_since(t0);
        return failure;
    }

    const std::size_t D = data.D;
    bool limited = false;
    bool found = false;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    std::vector<int> best_y;
    long lp_iterations = 0;
    long evaluated = 0;

    for (std::uint32_t mask = 0; mask < (1u << D); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) < data.min_regular) continue;
        std::vector<signed char> fixed(D);
        for (std::size_t d = 0; d < D; ++d) fixed[d] = (mask >> d) & 1u ? 1 : 0;
        CutPool pool;
        const NodeResult node =
            solve_node(data, problem.mean_profile, fixed, {}, pool, options);
        lp_iterations += node.lp_iterations;
        ++evaluated;
        if (node.status == LpSolution::Status::infeasible) continue;
        if (node.status != LpSolution::Status::optimal) {
            limited = true;
            continue;
        }
        if (node.objective < best_obj - 1e-12) {
            found = true;
            best_obj = node.objective;
            best_x = node.x;
            best_y.assign(D, 0);
            for (std::size_t d = 0; d < D; ++d) best_y[d] = (mask >> d) & 1u;
        }
    }

    if (!found) {
        failure.status = limited ? SolveStatus::iteration_limit : SolveStatus::infeasible;
        if (failure.status == SolveStatus::infeasible)
            failure.infeasible_day = infeasibility_witness(data);
        failure.lp_iterations = lp_iterations;
        failure.solve_seconds = seconds_since(t0);
        return failure;
    }

    BandSolution sol = assemble_solution(problem, data, best_x, best_y,
                                         limited ? SolveStatus::iteration_limit
                                                 : SolveStatus::optimal);
    sol.lower_bound = sol.objective;
    sol.nodes = evaluated;
    sol.lp_iterations = lp_iterations;
    sol.solve_seconds = seconds_since(t0);
    return sol;
}

} // namespace windband
