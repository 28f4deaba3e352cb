#ifndef LEXPCM_LP_HPP
#define LEXPCM_LP_HPP

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace lexpcm {

enum class Relation { LessEq, GreaterEq, Equal };

struct LpConstraint {
    std::string id;  // stable identifier so duals can be attributed
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

/// Inequality-form linear program: minimize objective . v subject to the
/// constraint rows and per-variable bounds (infinities allowed).
struct LpProblem {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LpConstraint> constraints;
    std::vector<double> lower;  // default 0
    std::vector<double> upper;  // default +inf

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    static LpProblem minimize(std::vector<double> c) {
        LpProblem p;
        p.num_vars = static_cast<int>(c.size());
        p.objective = std::move(c);
        p.lower.assign(p.num_vars, 0.0);
        p.upper.assign(p.num_vars, kInf);
        return p;
    }

    void set_free(int var) { lower[var] = -kInf; }

    int add_constraint(std::string id, std::vector<double> coeffs, Relation rel, double rhs) {
        constraints.push_back({std::move(id), std::move(coeffs), rel, rhs});
        return static_cast<int>(constraints.size()) - 1;
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Dual sign convention (minimization): a GreaterEq row carries a nonnegative
// dual, a LessEq row a nonpositive one, an Equal row an unrestricted one.
// An active constraint that limits the optimum of a minimization over LessEq
// rows therefore shows a negative dual. Strong duality holds as
//   objective_value == dual_objective
// with dual_objective = sum(dual_i * rhs_i) + sum over finite bounds of the
// corresponding reduced-cost contribution.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;
    std::vector<double> primal;
    std::map<std::string, double> duals;
    std::vector<double> reduced_costs;  // per variable, c - A^T dual
    double dual_objective = 0.0;
};

struct LpOptions {
    std::ostream* trace = nullptr;  // dump tableaus when set
};

LpSolution solve(const LpProblem& problem, const LpOptions& options = {});

}  // namespace lexpcm

#endif  // LEXPCM_LP_HPP
