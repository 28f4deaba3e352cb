#ifndef LEXPCM_LEX_COMPLETION_HPP
#define LEXPCM_LEX_COMPLETION_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexpcm/lp.hpp"
#include "lexpcm/pcm.hpp"

namespace lexpcm {

enum class CompletionMethod { Lex, LexFastPath, EigOptimal, Lls };
const char* method_name(CompletionMethod method);

struct TraceEntry {
    int iteration = 0;
    Triad triad;
    double ti_level = 1.0;  // TI units, exp of the log-scale objective
};

struct CompletionResult {
    CompletePcm matrix;
    ThetaVector theta;
    std::vector<TraceEntry> trace;
    CompletionMethod method = CompletionMethod::Lex;
    bool non_unique = false;  // disconnected comparison graph
};

/// Successive-LP bookkeeping: which triads still compete for the minimax
/// level and the log-scale levels already locked in.
struct LexState {
    std::set<std::size_t> active_set;              // indices into all_triads(n)
    std::map<std::size_t, double> fixed_levels;    // triad index -> log bound
    int iteration = 0;
};

// The minimax LP over the log-transformed matrix: one free variable per
// missing upper-triangle entry, one z_l >= 0 per triad bounding the absolute
// log cycle sum, z_l <= z for active triads, z_l <= fixed level otherwise,
// minimize z. Variable order: missing-entry logs, then z_l in canonical triad
// order, then z last.
LpProblem build_lp1(const IncompletePcm& matrix, const LexState& state);

enum class TieBreak { LowestIndex, HighestIndex };

/// Lexicographically optimal completion (successive LPs). Runs on any valid
/// input with order >= 3; a disconnected comparison graph yields one optimal
/// completion, canonicalized so the cross-block fills have geometric mean 1,
/// with non_unique set.
CompletionResult lex_complete(const IncompletePcm& matrix,
                              TieBreak tie_break = TieBreak::LowestIndex);

/// Closed-form completion for missing entries placed in pairwise distinct
/// rows and columns: each fill is the geometric mean of the extreme products
/// a_ik * a_kj. Throws std::invalid_argument when the entries are dependent.
CompletionResult independent_fast_path(const IncompletePcm& matrix);

/// True iff the lexicographically optimal completion is unique, which holds
/// exactly when the comparison graph is connected; entry values play no role.
bool check_uniqueness(const IncompletePcm& matrix);

/// Structured-text record: method, order, nonunique flag, completed matrix,
/// theta values, trace triples.
std::string format_completion(const CompletionResult& result, int precision = 4);

}  // namespace lexpcm

#endif  // LEXPCM_LEX_COMPLETION_HPP
