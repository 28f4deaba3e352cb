#include "lexpcm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lexpcm {

namespace {

constexpr double kOptTol = 1e-9;    // reduced-cost optimality
constexpr double kFeasTol = 1e-9;   // phase-1 residual
constexpr double kPivotTol = 1e-10; // smallest usable pivot element

// Dense two-phase simplex on the full tableau. The instances this project
// solves stay small (hundreds of rows), so clarity wins over sparsity.
class Simplex {
public:
    Simplex(const LpProblem& p, const LpOptions& opts) : p_(p), opts_(opts) { build(); }

    LpSolution run() {
        LpSolution sol;
        if (!phase1()) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        if (!phase2()) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        extract(sol);
        return sol;
    }

private:
    const LpProblem& p_;
    const LpOptions& opts_;

    // Converted (standard-form) problem data.
    int m_ = 0;                       // rows: original constraints + upper-bound rows
    int ncols_ = 0;                   // all columns incl. slack/surplus/artificial
    std::vector<double> tab_;         // (m_+1) x (ncols_+1)
    std::vector<int> basis_;          // basic column per row
    std::vector<double> cost_;        // phase-2 cost per column
    std::vector<bool> artificial_;    // per column
    std::vector<int> marker_col_;     // per row: slack or artificial column carrying its dual
    std::vector<double> marker_sign_; // dual = marker_sign * (-zrow[marker_col])
    std::vector<bool> flipped_;       // row negated during normalization

    // Variable mapping: original var j -> plus column, optional minus column.
    std::vector<int> col_plus_, col_minus_;
    std::vector<double> shift_;       // x_j = shift_j + x'_plus (- x'_minus)

    // Augmented rows = original constraints then upper-bound rows.
    struct RowRef {
        const std::vector<double>* coeffs; // dense over original vars, or null
        int bound_var = -1;                // for upper-bound rows
        Relation rel;
        double rhs;
    };
    std::vector<RowRef> rows_;

    double& at(int r, int c) { return tab_[static_cast<std::size_t>(r) * (ncols_ + 1) + c]; }
    double& rhs(int r) { return at(r, ncols_); }

    void build() {
        const int n = p_.num_vars;
        if (static_cast<int>(p_.objective.size()) != n || static_cast<int>(p_.lower.size()) != n ||
            static_cast<int>(p_.upper.size()) != n) {
            throw std::invalid_argument("LP vectors do not match num_vars");
        }
        for (const auto& c : p_.constraints) {
            if (static_cast<int>(c.coeffs.size()) != n) {
                throw std::invalid_argument("constraint '" + c.id + "' has wrong coefficient count");
            }
            rows_.push_back({&c.coeffs, -1, c.rel, c.rhs});
        }
        for (int j = 0; j < n; ++j) {
            if (std::isfinite(p_.upper[j])) rows_.push_back({nullptr, j, Relation::LessEq, p_.upper[j]});
        }
        m_ = static_cast<int>(rows_.size());

        // Column layout: structural first, then one slack/surplus per
        // inequality row, then one artificial per GreaterEq/Equal row.
        col_plus_.assign(n, -1);
        col_minus_.assign(n, -1);
        shift_.assign(n, 0.0);
        int col = 0;
        for (int j = 0; j < n; ++j) {
            col_plus_[j] = col++;
            if (std::isfinite(p_.lower[j])) {
                shift_[j] = p_.lower[j];
            } else {
                col_minus_[j] = col++;
            }
        }
        const int structural = col;

        flipped_.assign(m_, false);
        std::vector<double> row_rhs(m_);
        for (int r = 0; r < m_; ++r) {
            double b = rows_[r].rhs;
            // Fold variable shifts into the rhs.
            for (int j = 0; j < n; ++j) {
                double a = coeff(r, j);
                if (a != 0.0 && shift_[j] != 0.0) b -= a * shift_[j];
            }
            row_rhs[r] = b;
        }
        std::vector<Relation> rel(m_);
        for (int r = 0; r < m_; ++r) {
            rel[r] = rows_[r].rel;
            if (row_rhs[r] < 0.0) {
                flipped_[r] = true;
                row_rhs[r] = -row_rhs[r];
                if (rel[r] == Relation::LessEq) rel[r] = Relation::GreaterEq;
                else if (rel[r] == Relation::GreaterEq) rel[r] = Relation::LessEq;
            }
        }

        int slack_cols = 0, art_cols = 0;
        for (int r = 0; r < m_; ++r) {
            if (rel[r] != Relation::Equal) ++slack_cols;
            if (rel[r] != Relation::LessEq) ++art_cols;
        }
        ncols_ = structural + slack_cols + art_cols;
        tab_.assign(static_cast<std::size_t>(m_ + 1) * (ncols_ + 1), 0.0);
        cost_.assign(ncols_, 0.0);
        artificial_.assign(ncols_, false);
        basis_.assign(m_, -1);
        marker_col_.assign(m_, -1);
        marker_sign_.assign(m_, 1.0);

        for (int j = 0; j < n; ++j) {
            cost_[col_plus_[j]] = p_.objective[j];
            if (col_minus_[j] >= 0) cost_[col_minus_[j]] = -p_.objective[j];
        }
        for (int r = 0; r < m_; ++r) {
            double sgn = flipped_[r] ? -1.0 : 1.0;
            for (int j = 0; j < n; ++j) {
                double a = coeff(r, j);
                if (a == 0.0) continue;
                at(r, col_plus_[j]) = sgn * a;
                if (col_minus_[j] >= 0) at(r, col_minus_[j]) = -sgn * a;
            }
            rhs(r) = row_rhs[r];
        }

        int next = structural;
        for (int r = 0; r < m_; ++r) {
            if (rel[r] == Relation::LessEq) {
                at(r, next) = 1.0;
                basis_[r] = next;
                // dual' = -zrow[slack]; undo the row flip on the way out
                marker_col_[r] = next;
                marker_sign_[r] = flipped_[r] ? -1.0 : 1.0;
                ++next;
            } else if (rel[r] == Relation::GreaterEq) {
                at(r, next) = -1.0;
                ++next;
            }
        }
        for (int r = 0; r < m_; ++r) {
            if (rel[r] != Relation::LessEq) {
                at(r, next) = 1.0;
                artificial_[next] = true;
                basis_[r] = next;
                marker_col_[r] = next;
                marker_sign_[r] = flipped_[r] ? -1.0 : 1.0;
                ++next;
            }
        }
    }

    double coeff(int r, int j) const {
        const RowRef& row = rows_[r];
        if (row.coeffs) return (*row.coeffs)[j];
        return row.bound_var == j ? 1.0 : 0.0;
    }

    void set_zrow(const std::vector<double>& c) {
        for (int j = 0; j <= ncols_; ++j) {
            double v = j < ncols_ ? c[j] : 0.0;
            for (int r = 0; r < m_; ++r) {
                double cb = c[basis_[r]];
                if (cb != 0.0) v -= cb * at(r, j);
            }
            at(m_, j) = v;
        }
    }

    void pivot(int prow, int pcol) {
        double inv = 1.0 / at(prow, pcol);
        for (int j = 0; j <= ncols_; ++j) at(prow, j) *= inv;
        at(prow, pcol) = 1.0;
        for (int r = 0; r <= m_; ++r) {
            if (r == prow) continue;
            double f = at(r, pcol);
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols_; ++j) at(r, j) -= f * at(prow, j);
            at(r, pcol) = 0.0;
        }
        basis_[prow] = pcol;
    }

    // Returns false on unboundedness.
    bool iterate(bool allow_artificial) {
        const int stall_limit = 2 * (m_ + ncols_) + 20;
        const int max_iters = 200 * (m_ + ncols_) + 5000;
        int stall = 0;
        double last_obj = -at(m_, ncols_);
        for (int it = 0; it < max_iters; ++it) {
            bool bland = stall >= stall_limit;
            int enter = -1;
            double best = -kOptTol;
            for (int j = 0; j < ncols_; ++j) {
                if (!allow_artificial && artificial_[j]) continue;
                double rc = at(m_, j);
                if (rc < best) {
                    enter = j;
                    if (bland) break;  // lowest eligible index
                    best = rc;
                }
            }
            if (enter < 0) return true;  // optimal

            int leave = -1;
            double best_ratio = 0.0;
            for (int r = 0; r < m_; ++r) {
                double a = at(r, enter);
                if (a <= kPivotTol) continue;
                double ratio = rhs(r) / a;
                if (leave < 0 || ratio < best_ratio - 1e-12) {
                    leave = r;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[leave]) {
                    leave = r;  // degenerate tie: lowest basic index keeps pivoting acyclic
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leave < 0) return false;  // unbounded direction

            pivot(leave, enter);
            double obj = -at(m_, ncols_);
            if (obj < last_obj - 1e-12) {
                stall = 0;
                last_obj = obj;
            } else {
                ++stall;
            }
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    bool phase1() {
        bool any_art = std::any_of(artificial_.begin(), artificial_.end(), [](bool b) { return b; });
        if (!any_art) {
            set_zrow(cost_);
            return true;
        }
        std::vector<double> c1(ncols_, 0.0);
        for (int j = 0; j < ncols_; ++j)
            if (artificial_[j]) c1[j] = 1.0;
        set_zrow(c1);
        dump("phase 1 start");
        if (!iterate(true)) throw std::runtime_error("phase-1 LP reported unbounded");
        double infeas = -at(m_, ncols_);
        if (infeas > kFeasTol) return false;

        // Drive any artificial still basic (at value 0) out of the basis.
        for (int r = 0; r < m_; ++r) {
            if (!artificial_[basis_[r]]) continue;
            int repl = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (artificial_[j]) continue;
                if (std::abs(at(r, j)) > kPivotTol) {
                    repl = j;
                    break;
                }
            }
            if (repl >= 0) pivot(r, repl);
            // else: redundant row; the artificial stays basic at zero.
        }
        set_zrow(cost_);
        return true;
    }

    bool phase2() {
        dump("phase 2 start");
        bool ok = iterate(false);
        dump("final");
        return ok;
    }

    void extract(LpSolution& sol) {
        const int n = p_.num_vars;
        std::vector<double> x(ncols_, 0.0);
        for (int r = 0; r < m_; ++r) x[basis_[r]] = rhs(r);

        sol.status = LpStatus::Optimal;
        sol.primal.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double v = shift_[j] + x[col_plus_[j]];
            if (col_minus_[j] >= 0) v -= x[col_minus_[j]];
            sol.primal[j] = v;
        }
        sol.objective_value = 0.0;
        for (int j = 0; j < n; ++j) sol.objective_value += p_.objective[j] * sol.primal[j];

        // Row duals from the marker columns of the final z-row.
        std::vector<double> lambda(m_);
        for (int r = 0; r < m_; ++r) lambda[r] = marker_sign_[r] * -at(m_, marker_col_[r]);
        for (std::size_t r = 0; r < p_.constraints.size(); ++r) {
            sol.duals[p_.constraints[r].id] = lambda[r];
        }
        for (int r = static_cast<int>(p_.constraints.size()); r < m_; ++r) {
            sol.duals["__ub:" + std::to_string(rows_[r].bound_var)] = lambda[r];
        }

        // Reduced costs against the original data, then the dual objective
        // including finite-lower-bound contributions.
        sol.reduced_costs.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            double rc = p_.objective[j];
            for (int r = 0; r < m_; ++r) {
                double a = coeff(r, j);
                if (a != 0.0) rc -= lambda[r] * a;
            }
            sol.reduced_costs[j] = rc;
        }
        sol.dual_objective = 0.0;
        for (int r = 0; r < m_; ++r) sol.dual_objective += lambda[r] * rows_[r].rhs;
        for (int j = 0; j < n; ++j) {
            if (std::isfinite(p_.lower[j]) && sol.reduced_costs[j] > 0.0) {
                sol.dual_objective += sol.reduced_costs[j] * p_.lower[j];
            }
        }
    }

    void dump(const char* tag) {
        if (!opts_.trace) return;
        std::ostream& os = *opts_.trace;
        os << "--- tableau (" << tag << ") basis:";
        for (int b : basis_) os << ' ' << b;
        os << '\n';
        for (int r = 0; r <= m_; ++r) {
            for (int j = 0; j <= ncols_; ++j) os << (j ? " " : "") << at(r, j);
            os << '\n';
        }
    }
};

}  // namespace

LpSolution solve(const LpProblem& problem, const LpOptions& options) {
    Simplex s(problem, options);
    return s.run();
}

}  // namespace lexpcm
