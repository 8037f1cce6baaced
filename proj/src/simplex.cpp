#include "windband/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windband::lp {

namespace {

constexpr double kPivotTol = 1e-9;   // reject smaller pivot elements
constexpr double kCostTol = 1e-9;    // reduced-cost optimality threshold
constexpr double kFeasTol = 1e-9;    // bound violation considered zero
constexpr double kPhase1Tol = 1e-7;  // residual infeasibility => infeasible

enum class At { lower, upper, basic };

class Tableau {
public:
    Tableau(const LinearProgram& lp, long max_iterations)
        : lp_(lp), m_(static_cast<int>(lp.rows.size())), max_iter_(max_iterations) {
        n_struct_ = lp.num_vars;
        n_total_ = n_struct_ + m_; // artificials appended on demand
        lower_ = lp.lower;
        upper_ = lp.upper;
        lower_.resize(n_total_, 0.0);
        upper_.resize(n_total_, kInf);
        value_.assign(n_total_, 0.0);
        status_.assign(n_total_, At::lower);
        for (int j = 0; j < n_struct_; ++j) {
            if (!std::isfinite(lower_[j]))
                throw std::invalid_argument("simplex requires finite lower bounds");
            value_[j] = lower_[j];
        }
    }

    LpResult run() {
        build_initial_basis();
        LpResult res;
        if (n_art_ > 0) {
            set_phase1_costs();
            const bool ok = iterate();
            if (!ok || unbounded_) return finish(LpStatus::iteration_limit);
            refresh_basic_values();
            if (phase1_objective() > kPhase1Tol) return finish(LpStatus::infeasible);
            pivot_out_artificials();
            // Freeze artificials at zero so phase 2 cannot reuse them.
            for (int k = 0; k < n_art_; ++k) upper_[n_total_ + k] = 0.0;
        }
        set_phase2_costs();
        const bool ok = iterate();
        if (!ok) return finish(LpStatus::iteration_limit);
        if (unbounded_) return finish(LpStatus::unbounded);
        refresh_basic_values();
        return finish(LpStatus::optimal);
    }

private:
    const LinearProgram& lp_;
    int m_;
    long max_iter_;
    int n_struct_ = 0;
    int n_total_ = 0;
    int n_art_ = 0;

    std::vector<double> tab_;    // m_ x cols_, row-major: B^-1 [A I E]
    int cols_ = 0;
    std::vector<double> z_;      // reduced-cost row
    std::vector<double> beta_;   // basic variable values
    std::vector<int> basic_;     // basic variable per row
    std::vector<double> lower_, upper_, value_;
    std::vector<At> status_;
    std::vector<double> cost_;   // active phase costs
    long iters_ = 0;
    bool unbounded_ = false;
    int degen_run_ = 0;

    double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }

    int slack_col(int i) const { return n_struct_ + i; }

    // Residual of row i at the current nonbasic values, in original space.
    double row_residual(int i) const {
        double r = lp_.rows[i].rhs;
        for (const Term& t : lp_.rows[i].terms) r -= t.coef * value_[t.col];
        return r;
    }

    void build_initial_basis() {
        std::vector<double> resid(m_);
        std::vector<int> art_rows;
        for (int i = 0; i < m_; ++i) {
            resid[i] = row_residual(i);
            if (resid[i] < -kFeasTol) art_rows.push_back(i);
        }
        n_art_ = static_cast<int>(art_rows.size());
        cols_ = n_total_ + n_art_;
        lower_.resize(cols_, 0.0);
        upper_.resize(cols_, kInf);
        value_.resize(cols_, 0.0);
        status_.resize(cols_, At::lower);

        tab_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
        basic_.assign(m_, -1);
        beta_.assign(m_, 0.0);

        std::vector<int> art_of_row(m_, -1);
        for (int k = 0; k < n_art_; ++k) art_of_row[art_rows[k]] = n_total_ + k;

        for (int i = 0; i < m_; ++i) {
            // sigma = -1 on artificial rows: the initial basis column there
            // is the artificial (coefficient -1), so B^-1 negates the row.
            const double sigma = art_of_row[i] >= 0 ? -1.0 : 1.0;
            for (const Term& t : lp_.rows[i].terms) at(i, t.col) += sigma * t.coef;
            at(i, slack_col(i)) = sigma;
            if (art_of_row[i] >= 0) {
                at(i, art_of_row[i]) = 1.0; // sigma * (-1) * ... = +1
                basic_[i] = art_of_row[i];
                beta_[i] = -resid[i];
            } else {
                basic_[i] = slack_col(i);
                beta_[i] = resid[i];
            }
            status_[basic_[i]] = At::basic;
        }
    }

    void set_phase1_costs() {
        cost_.assign(cols_, 0.0);
        for (int k = 0; k < n_art_; ++k) cost_[n_total_ + k] = 1.0;
        recompute_reduced_costs();
    }

    void set_phase2_costs() {
        cost_.assign(cols_, 0.0);
        for (int j = 0; j < n_struct_; ++j) cost_[j] = lp_.cost[j];
        recompute_reduced_costs();
    }

    void recompute_reduced_costs() {
        z_.assign(cols_, 0.0);
        // z_j = c_j - sum_i c_B(i) * tab(i, j)
        for (int j = 0; j < cols_; ++j) z_[j] = cost_[j];
        for (int i = 0; i < m_; ++i) {
            const double cb = cost_[basic_[i]];
            if (cb == 0.0) continue;
            const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
            for (int j = 0; j < cols_; ++j) z_[j] -= cb * row[j];
        }
        for (int i = 0; i < m_; ++i) z_[basic_[i]] = 0.0;
    }

    double phase1_objective() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i)
            if (basic_[i] >= n_total_) s += beta_[i];
        return s;
    }

    // beta = B^-1 (b - A_N x_N); slack columns of the tableau hold B^-1.
    void refresh_basic_values() {
        std::vector<double> r(m_);
        for (int i = 0; i < m_; ++i) {
            double v = lp_.rows[i].rhs;
            for (const Term& t : lp_.rows[i].terms)
                if (status_[t.col] != At::basic) v -= t.coef * value_[t.col];
            // nonbasic slacks and artificials
            if (status_[slack_col(i)] != At::basic) v -= value_[slack_col(i)];
            // nonbasic artificials sit at zero, so they never contribute
            r[i] = v;
        }
        for (int i = 0; i < m_; ++i) {
            double v = 0.0;
            for (int k = 0; k < m_; ++k) v += at(i, slack_col(k)) * r[k];
            beta_[i] = v;
        }
    }

    // Chooses the entering variable. Dantzig by default, Bland under
    // prolonged degeneracy. Returns -1 when optimal.
    int choose_entering(bool bland) const {
        int best = -1;
        double best_score = -kCostTol;
        for (int j = 0; j < cols_; ++j) {
            if (status_[j] == At::basic) continue;
            if (lower_[j] == upper_[j]) continue; // fixed var never enters
            double score = 0.0;
            if (status_[j] == At::lower && z_[j] < -kCostTol)
                score = z_[j];
            else if (status_[j] == At::upper && z_[j] > kCostTol)
                score = -z_[j];
            else
                continue;
            if (bland) return j;
            if (score < best_score) {
                best_score = score;
                best = j;
            }
        }
        return best;
    }

    bool iterate() {
        bool bland = false;
        while (true) {
            if (iters_ >= max_iter_) return false;
            const int q = choose_entering(bland);
            if (q < 0) return true; // optimal for current costs
            ++iters_;
            const double dir = status_[q] == At::lower ? 1.0 : -1.0;

            // Ratio test over basic variables plus q's own opposite bound.
            double best_step = upper_[q] - lower_[q]; // may be inf
            int leave_row = -1;
            double leave_pivot = 0.0;
            bool leave_at_upper = false;
            for (int i = 0; i < m_; ++i) {
                const double d = dir * at(i, q);
                const int k = basic_[i];
                double step;
                bool to_upper;
                if (d > kPivotTol) {
                    step = (beta_[i] - lower_[k]) / d;
                    to_upper = false;
                } else if (d < -kPivotTol) {
                    if (!std::isfinite(upper_[k])) continue;
                    step = (beta_[i] - upper_[k]) / d;
                    to_upper = true;
                } else {
                    continue;
                }
                if (step < -kFeasTol) step = 0.0;
                if (step < best_step - 1e-12 ||
                    (step < best_step + 1e-12 && leave_row >= 0 &&
                     std::abs(at(i, q)) > std::abs(leave_pivot) + 1e-12)) {
                    best_step = std::max(step, 0.0);
                    leave_row = i;
                    leave_pivot = at(i, q);
                    leave_at_upper = to_upper;
                }
            }

            if (leave_row < 0 && !std::isfinite(best_step)) {
                unbounded_ = true;
                return true;
            }

            // Track degeneracy and flip to Bland's rule when stuck.
            if (best_step < 1e-12) {
                if (++degen_run_ > 4 * (m_ + 8)) bland = true;
            } else {
                degen_run_ = 0;
                bland = false;
            }

            if (leave_row < 0) {
                // Bound flip: q travels to its other bound, no basis change.
                const double step = best_step;
                for (int i = 0; i < m_; ++i) beta_[i] -= dir * at(i, q) * step;
                value_[q] = dir > 0 ? upper_[q] : lower_[q];
                status_[q] = dir > 0 ? At::upper : At::lower;
                continue;
            }

            pivot(q, leave_row, dir, best_step, leave_at_upper);
        }
    }

    void pivot(int q, int r, double dir, double step, bool leaving_at_upper) {
        const int out = basic_[r];
        // Update basic values along the direction.
        for (int i = 0; i < m_; ++i) beta_[i] -= dir * at(i, q) * step;
        const double enter_value = (status_[q] == At::lower ? lower_[q] : upper_[q]) + dir * step;

        // Normalize pivot row.
        const double piv = at(r, q);
        double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
        const double inv = 1.0 / piv;
        for (int j = 0; j < cols_; ++j) prow[j] *= inv;

        // Eliminate column q elsewhere and in the cost row.
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(i, q);
            if (f == 0.0) continue;
            double* row = &tab_[static_cast<std::size_t>(i) * cols_];
            for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
            row[q] = 0.0;
        }
        {
            const double f = z_[q];
            if (f != 0.0) {
                for (int j = 0; j < cols_; ++j) z_[j] -= f * prow[j];
                z_[q] = 0.0;
            }
        }

        status_[out] = leaving_at_upper ? At::upper : At::lower;
        value_[out] = leaving_at_upper ? upper_[out] : lower_[out];
        status_[q] = At::basic;
        basic_[r] = q;
        beta_[r] = enter_value;
    }

    // After phase 1, basic artificials sit at zero; swap them for any
    // usable column so phase 2 never touches them.
    void pivot_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basic_[i] < n_total_) continue;
            int q = -1;
            for (int j = 0; j < n_total_; ++j) {
                if (status_[j] == At::basic) continue;
                if (std::abs(at(i, j)) > 1e-7) {
                    q = j;
                    break;
                }
            }
            if (q < 0) continue; // redundant row; artificial stays basic at 0
            const int out = basic_[i];
            const double piv = at(i, q);
            double* prow = &tab_[static_cast<std::size_t>(i) * cols_];
            const double inv = 1.0 / piv;
            for (int j = 0; j < cols_; ++j) prow[j] *= inv;
            for (int k = 0; k < m_; ++k) {
                if (k == i) continue;
                const double f = at(k, q);
                if (f == 0.0) continue;
                double* row = &tab_[static_cast<std::size_t>(k) * cols_];
                for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
                row[q] = 0.0;
            }
            status_[out] = At::lower;
            value_[out] = 0.0;
            status_[q] = At::basic;
            basic_[i] = q;
            // No step is taken: q stays at the value it held at its bound.
            beta_[i] = value_[q];
        }
    }

    LpResult finish(LpStatus st) {
        LpResult res;
        res.status = st;
        res.iterations = iters_;
        if (st != LpStatus::optimal) return res;

        for (int i = 0; i < m_; ++i) value_[basic_[i]] = beta_[i];
        res.solution.assign(value_.begin(), value_.begin() + n_struct_);

        // A claimed optimum must actually satisfy the program. Downgrading
        // beats returning a silently wrong answer.
        for (int j = 0; j < n_struct_; ++j)
            if (res.solution[j] < lower_[j] - 1e-6 || res.solution[j] > upper_[j] + 1e-6) {
                res.status = LpStatus::iteration_limit;
                return res;
            }
        for (int i = 0; i < m_; ++i) {
            double lhs = 0.0;
            for (const Term& t : lp_.rows[i].terms) lhs += t.coef * res.solution[t.col];
            if (lhs > lp_.rows[i].rhs + 1e-6) {
                res.status = LpStatus::iteration_limit;
                return res;
            }
        }

        double obj = 0.0;
        for (int j = 0; j < n_struct_; ++j) obj += lp_.cost[j] * res.solution[j];
        res.objective = obj;
        res.row_duals.resize(m_);
        for (int i = 0; i < m_; ++i) res.row_duals[i] = std::max(0.0, z_[slack_col(i)]);
        return res;
    }
};

} // namespace

int LinearProgram::add_var(double cost_, double lower_, double upper_) {
    cost.push_back(cost_);
    lower.push_back(lower_);
    upper.push_back(upper_);
    return num_vars++;
}

LpResult solve_lp(const LinearProgram& lp, long max_iterations) {
    if (static_cast<int>(lp.cost.size()) != lp.num_vars ||
        static_cast<int>(lp.lower.size()) != lp.num_vars ||
        static_cast<int>(lp.upper.size()) != lp.num_vars)
        throw std::invalid_argument("inconsistent LinearProgram arrays");
    Tableau t(lp, max_iterations);
    return t.run();
}

} // namespace windband::lp
