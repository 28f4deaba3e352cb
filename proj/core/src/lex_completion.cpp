#include "lexpcm/lex_completion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lexpcm {

namespace {

constexpr double kZeroLevel = 1e-9;  // log-scale objective treated as zero

std::string triad_id(const Triad& t) {
    return std::to_string(t.i + 1) + "." + std::to_string(t.j + 1) + "." + std::to_string(t.k + 1);
}

// Log cycle sum of a triad as an affine function of the missing-entry logs:
// log a_ij + log a_jk - log a_ik = constant + coeffs . y.
struct CycleForm {
    double constant = 0.0;
    std::vector<std::pair<int, double>> terms;  // (missing index, +-1)
};

CycleForm cycle_form(const IncompletePcm& m, const Triad& t,
                     const std::map<std::pair<int, int>, int>& missing_index) {
    CycleForm f;
    auto add = [&](int p, int q, double sign) {
        if (m.known(p, q)) {
            f.constant += sign * std::log(m.value(p, q));
        } else {
            f.terms.emplace_back(missing_index.at({p, q}), sign);
        }
    };
    add(t.i, t.j, 1.0);
    add(t.j, t.k, 1.0);
    add(t.i, t.k, -1.0);
    return f;
}

std::map<std::pair<int, int>, int> missing_index_of(const IncompletePcm& m) {
    std::map<std::pair<int, int>, int> idx;
    int next = 0;
    for (auto& pos : m.missing_positions()) idx[pos] = next++;
    return idx;
}

// Reduced per-stage LP used by the driver: only triads touching a missing
// entry get a z_l; fully known triads have constant cycle sums and are
// tracked outside the LP. Equivalent to LP1 stage by stage, since a constant
// triad's rows can bind only when its level tops the variable optimum.
struct StageLp {
    const IncompletePcm* matrix;
    std::vector<std::size_t> var_triads;               // indices into all_triads
    std::vector<CycleForm> forms;                      // parallel to var_triads
    int m = 0;                                         // missing count

    // position of triad's z variable: m + slot
    int z_var(int slot) const { return m + slot; }
    int z_total() const { return m + static_cast<int>(var_triads.size()); }

    // active: slots with a cap row z_l <= z; fixed: slot -> log level;
    // skip_cap: slot whose cap row is deleted (pin verification), or -1.
    LpProblem build(const std::set<int>& active, const std::map<int, double>& fixed,
                    int skip_cap) const {
        int nv = z_total() + 1;
        std::vector<double> c(nv, 0.0);
        c[nv - 1] = 1.0;
        LpProblem lp = LpProblem::minimize(std::move(c));
        for (int v = 0; v < m; ++v) lp.set_free(v);
        for (std::size_t s = 0; s < var_triads.size(); ++s) {
            const CycleForm& f = forms[s];
            std::vector<double> row(nv, 0.0);
            for (auto [v, sgn] : f.terms) row[v] = sgn;
            row[z_var(static_cast<int>(s))] = -1.0;
            lp.add_constraint("abs+:" + std::to_string(s), row, Relation::LessEq, -f.constant);
            for (auto [v, sgn] : f.terms) row[v] = -sgn;
            lp.add_constraint("abs-:" + std::to_string(s), std::move(row), Relation::LessEq,
                              f.constant);
        }
        for (int s : active) {
            if (s == skip_cap) continue;
            std::vector<double> row(nv, 0.0);
            row[z_var(s)] = 1.0;
            row[nv - 1] = -1.0;
            lp.add_constraint("cap:" + std::to_string(s), std::move(row), Relation::LessEq, 0.0);
        }
        for (auto [s, level] : fixed) {
            std::vector<double> row(nv, 0.0);
            row[z_var(s)] = 1.0;
            lp.add_constraint("fix:" + std::to_string(s), std::move(row), Relation::LessEq, level);
        }
        return lp;
    }
};

LpSolution solve_or_throw(const LpProblem& lp) {
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal) {
        throw std::logic_error("stage LP unexpectedly not optimal");
    }
    return sol;
}

// Canonical scale for a disconnected instance: component by component, shift
// the cross fills so their geometric mean (oriented from the already-merged
// side) is 1. Triad inconsistencies are invariant under these shifts.
void canonicalize_cross_blocks(const IncompletePcm& matrix, std::vector<double>& log_fills) {
    auto comp = connected_components(graph_of(matrix));
    int ncomp = 1 + *std::max_element(comp.begin(), comp.end());
    if (ncomp <= 1) return;
    const auto& missing = matrix.missing_positions();
    std::vector<bool> merged(ncomp, false);
    merged[comp[0]] = true;
    for (int c = 0; c < ncomp; ++c) {
        if (merged[c]) continue;
        double sum = 0.0;
        int count = 0;
        for (std::size_t p = 0; p < missing.size(); ++p) {
            auto [i, j] = missing[p];
            double sgn = 0.0;
            if (merged[comp[i]] && comp[j] == c) sgn = 1.0;
            else if (comp[i] == c && merged[comp[j]]) sgn = -1.0;
            if (sgn != 0.0) {
                sum += sgn * log_fills[p];
                ++count;
            }
        }
        if (count > 0) {
            double delta = -sum / count;
            for (std::size_t p = 0; p < missing.size(); ++p) {
                auto [i, j] = missing[p];
                if (merged[comp[i]] && comp[j] == c) log_fills[p] += delta;
                else if (comp[i] == c && merged[comp[j]]) log_fills[p] -= delta;
            }
        }
        merged[c] = true;
    }
}

}  // namespace

const char* method_name(CompletionMethod method) {
    switch (method) {
        case CompletionMethod::Lex: return "lex";
        case CompletionMethod::LexFastPath: return "lex-fast-path";
        case CompletionMethod::EigOptimal: return "eig";
        case CompletionMethod::Lls: return "lls";
    }
    return "?";
}

LpProblem build_lp1(const IncompletePcm& matrix, const LexState& state) {
    const int n = matrix.order();
    auto triads = all_triads(n);
    auto midx = missing_index_of(matrix);
    const int m = matrix.missing_count();
    const int nv = m + static_cast<int>(triads.size()) + 1;

    std::vector<double> c(nv, 0.0);
    c[nv - 1] = 1.0;
    LpProblem lp = LpProblem::minimize(std::move(c));
    for (int v = 0; v < m; ++v) lp.set_free(v);

    for (std::size_t l = 0; l < triads.size(); ++l) {
        CycleForm f = cycle_form(matrix, triads[l], midx);
        std::vector<double> row(nv, 0.0);
        for (auto [v, sgn] : f.terms) row[v] = sgn;
        row[m + static_cast<int>(l)] = -1.0;
        lp.add_constraint("abs+:" + triad_id(triads[l]), row, Relation::LessEq, -f.constant);
        for (auto [v, sgn] : f.terms) row[v] = -sgn;
        lp.add_constraint("abs-:" + triad_id(triads[l]), std::move(row), Relation::LessEq,
                          f.constant);
    }
    for (std::size_t l = 0; l < triads.size(); ++l) {
        std::vector<double> row(nv, 0.0);
        row[m + static_cast<int>(l)] = 1.0;
        auto fixed = state.fixed_levels.find(l);
        if (fixed != state.fixed_levels.end()) {
            lp.add_constraint("fix:" + triad_id(triads[l]), std::move(row), Relation::LessEq,
                              fixed->second);
        } else {
            row[nv - 1] = -1.0;
            lp.add_constraint("cap:" + triad_id(triads[l]), std::move(row), Relation::LessEq, 0.0);
        }
    }
    return lp;
}

CompletionResult lex_complete(const IncompletePcm& matrix, TieBreak tie_break) {
    const int n = matrix.order();
    if (n < 3) throw std::domain_error("lex_complete needs order >= 3");
    const auto triads = all_triads(n);
    const auto midx = missing_index_of(matrix);
    const int m = matrix.missing_count();

    StageLp stage;
    stage.matrix = &matrix;
    stage.m = m;
    // Constant triads: (log level, triad index), fixed without an LP.
    std::vector<std::pair<double, std::size_t>> const_levels;
    for (std::size_t l = 0; l < triads.size(); ++l) {
        CycleForm f = cycle_form(matrix, triads[l], midx);
        if (f.terms.empty()) {
            const_levels.emplace_back(std::abs(f.constant), l);
        } else {
            stage.var_triads.push_back(l);
            stage.forms.push_back(std::move(f));
        }
    }
    const bool ascending = tie_break == TieBreak::LowestIndex;
    std::sort(const_levels.begin(), const_levels.end(),
              [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return ascending ? a.second < b.second : a.second > b.second;
              });
    std::size_t next_const = 0;

    std::set<int> active;
    for (int s = 0; s < static_cast<int>(stage.var_triads.size()); ++s) active.insert(s);
    std::map<int, double> fixed;

    std::vector<TraceEntry> trace;
    int iteration = 0;
    auto record = [&](const Triad& t, double log_level) {
        trace.push_back({++iteration, t, std::exp(log_level)});
    };

    const int max_stages = static_cast<int>(triads.size()) + 1;
    for (int guard = 0; guard < max_stages; ++guard) {
        double obj_var = 0.0;
        LpSolution sol;
        std::map<std::string, double> duals;
        if (!active.empty()) {
            sol = solve_or_throw(stage.build(active, fixed, -1));
            obj_var = sol.objective_value;
            duals = sol.duals;
        }
        double top_const =
            next_const < const_levels.size() ? const_levels[next_const].first : -1.0;
        double obj = std::max(obj_var, top_const);
        if (obj <= kZeroLevel) break;

        if (top_const >= obj_var - 1e-12) {
            auto [level, l] = const_levels[next_const++];
            record(triads[l], level);
            continue;
        }

        // Candidates: active triads whose cap carries a nonzero dual. A
        // nonzero dual certifies the triad sits at the minimax level in every
        // optimum; the deletion re-solve guards against duals that are only
        // numerical noise under degeneracy.
        std::vector<int> cands;
        for (int s : active) {
            auto it = duals.find("cap:" + std::to_string(s));
            if (it != duals.end() && std::abs(it->second) > 1e-9) cands.push_back(s);
        }
        if (cands.empty()) throw std::logic_error("no candidate triad carries a nonzero dual");
        std::sort(cands.begin(), cands.end(), [&](int a, int b) {
            return ascending ? stage.var_triads[a] < stage.var_triads[b]
                             : stage.var_triads[a] > stage.var_triads[b];
        });
        int chosen = -1;
        for (int s : cands) {
            LpSolution probe = solve_or_throw(stage.build(active, fixed, s));
            if (probe.objective_value < obj_var - 1e-9) {
                chosen = s;
                break;
            }
        }
        if (chosen < 0) {
            chosen = *std::max_element(cands.begin(), cands.end(), [&](int a, int b) {
                return std::abs(duals.at("cap:" + std::to_string(a))) <
                       std::abs(duals.at("cap:" + std::to_string(b)));
            });
        }
        fixed[chosen] = obj_var;
        active.erase(chosen);
        record(triads[stage.var_triads[chosen]], obj_var);
    }

    std::vector<double> log_fills(m, 0.0);
    if (m > 0) {
        LpSolution final_sol = solve_or_throw(stage.build(active, fixed, -1));
        for (int v = 0; v < m; ++v) log_fills[v] = final_sol.primal[v];
    }

    bool connected = is_connected(graph_of(matrix));
    if (!connected) canonicalize_cross_blocks(matrix, log_fills);

    std::vector<double> fills(m);
    for (int v = 0; v < m; ++v) fills[v] = std::exp(log_fills[v]);
    CompletePcm completed = matrix.completed_with(fills);
    return CompletionResult{completed, theta_vector(completed), std::move(trace),
                            CompletionMethod::Lex, !connected};
}

CompletionResult independent_fast_path(const IncompletePcm& matrix) {
    const int n = matrix.order();
    if (n < 3) throw std::domain_error("independent_fast_path needs order >= 3");
    const auto& missing = matrix.missing_positions();
    std::vector<int> used;
    for (auto [i, j] : missing) {
        used.push_back(i);
        used.push_back(j);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw std::invalid_argument(
            "missing entries share a row or column; use lex_complete instead");
    }

    std::vector<double> fills;
    std::vector<TraceEntry> trace;
    for (auto [i, j] : missing) {
        double lo = 0.0, hi = 0.0;
        int lo_k = -1, hi_k = -1;
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            double c = matrix.value(i, k) * matrix.value(k, j);
            if (lo_k < 0 || c < lo) {
                lo = c;
                lo_k = k;
            }
            if (hi_k < 0 || c > hi) {
                hi = c;
                hi_k = k;
            }
        }
        fills.push_back(std::sqrt(lo * hi));
        double level = std::sqrt(hi / lo);
        if (level > 1.0 + kZeroLevel) {
            int a[3] = {i, hi_k, j};
            std::sort(a, a + 3);
            trace.push_back({0, {a[0], a[1], a[2]}, level});
        }
    }
    std::stable_sort(trace.begin(), trace.end(),
                     [](const TraceEntry& a, const TraceEntry& b) { return a.ti_level > b.ti_level; });
    for (std::size_t t = 0; t < trace.size(); ++t) trace[t].iteration = static_cast<int>(t) + 1;

    CompletePcm completed = matrix.completed_with(fills);
    return CompletionResult{completed, theta_vector(completed), std::move(trace),
                            CompletionMethod::LexFastPath, false};
}

bool check_uniqueness(const IncompletePcm& matrix) { return is_connected(graph_of(matrix)); }

std::string format_completion(const CompletionResult& result, int precision) {
    std::ostringstream out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
        return std::string(buf);
    };
    const CompletePcm& m = result.matrix;
    out << "method: " << method_name(result.method) << "\n";
    out << "order: " << m.order() << "\n";
    out << "nonunique: " << (result.non_unique ? "yes" : "no") << "\n";
    out << "matrix:\n";
    for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) out << (j ? " " : "") << num(m(i, j));
        out << "\n";
    }
    out << "theta:";
    for (double v : result.theta.values()) out << ' ' << num(v);
    out << "\n";
    out << "trace:\n";
    for (const TraceEntry& e : result.trace) {
        out << e.iteration << " (" << e.triad.i + 1 << "," << e.triad.j + 1 << "," << e.triad.k + 1
            << ") " << num(e.ti_level) << "\n";
    }
    return out.str();
}

}  // namespace lexpcm
