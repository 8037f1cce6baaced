#pragma once

#include <limits>
#include <vector>

namespace windband::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Term {
    int col;
    double coef;
};

// One constraint row, always in "<= rhs" form.
struct Row {
    std::vector<Term> terms;
    double rhs = 0.0;
};

// min cost . v  s.t.  rows (<=),  lower <= v <= upper.
// Lower bounds must be finite; uppers may be +inf.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> cost;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int add_var(double cost_, double lower_, double upper_);
    void add_row(Row row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
    LpStatus status = LpStatus::iteration_limit;
    double objective = 0.0;
    std::vector<double> solution;  // structural variable values
    std::vector<double> row_duals; // multiplier >= 0 per <= row (min problem)
    long iterations = 0;
};

// Dense two-phase primal simplex with variable bounds. Deterministic:
// Dantzig pricing with lowest-index tie-breaks, Bland fallback under
// degeneracy.
LpResult solve_lp(const LinearProgram& lp, long max_iterations = 500000);

} // namespace windband::lp
