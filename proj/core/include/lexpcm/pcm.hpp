#ifndef LEXPCM_PCM_HPP
#define LEXPCM_PCM_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lexpcm {

/// Raised when a completion method needs a connected comparison graph but the
/// input's graph is disconnected (Theorem-style uniqueness fails).
struct NonUniqueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a required configuration value (e.g. a random-index table
/// entry) is missing or unusable.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully known positive reciprocal matrix. Immutable after construction.
class CompletePcm {
public:
    // Validates: unit diagonal, positivity/finiteness, reciprocity within
    // relative 1e-12. Throws std::invalid_argument on violation.
    static CompletePcm from_entries(int n, std::vector<double> entries);

    int order() const { return n_; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    bool operator==(const CompletePcm&) const = default;

private:
    CompletePcm(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {}
    int n_;
    std::vector<double> entries_;
};

/// Reciprocal matrix with some comparisons unknown. Missing cells come in
/// symmetric pairs; the diagonal is always known and equal to 1.
class IncompletePcm {
public:
    // Cells in row-major order; std::nullopt marks a missing comparison.
    // Validates the symmetric-missing pattern and reciprocity of known pairs.
    static IncompletePcm from_cells(int n, std::vector<std::optional<double>> cells);
    static IncompletePcm from_complete(const CompletePcm& matrix);

    int order() const { return n_; }
    bool known(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j].has_value(); }
    // Value of a known cell; throws std::logic_error if the cell is missing.
    double value(int i, int j) const;
    const std::optional<double>& cell(int i, int j) const {
        return cells_[static_cast<std::size_t>(i) * n_ + j];
    }

    /// Number of missing upper-triangle cells (the paper's m).
    int missing_count() const { return static_cast<int>(missing_.size()); }
    /// Missing upper-triangle positions (i < j), ascending.
    const std::vector<std::pair<int, int>>& missing_positions() const { return missing_; }

    bool complete() const { return missing_.empty(); }
    // Requires complete(); throws std::logic_error otherwise.
    CompletePcm to_complete() const;
    // Fill the missing cells (one value per missing_positions() entry,
    // reciprocals derived) and return the completed matrix.
    CompletePcm completed_with(const std::vector<double>& fills) const;

private:
    IncompletePcm(int n, std::vector<std::optional<double>> cells,
                  std::vector<std::pair<int, int>> missing)
        : n_(n), cells_(std::move(cells)), missing_(std::move(missing)) {}
    int n_;
    std::vector<std::optional<double>> cells_;
    std::vector<std::pair<int, int>> missing_;
};

/// Undirected graph of known comparisons: one vertex per alternative, one
/// edge per known off-diagonal pair.
struct ComparisonGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, ascending

    bool has_edge(int i, int j) const;
};

ComparisonGraph graph_of(const IncompletePcm& matrix);
bool is_connected(const ComparisonGraph& graph);
/// Component id per vertex, ids numbered by first occurrence.
std::vector<int> connected_components(const ComparisonGraph& graph);

/// Index triple i < j < k (0-based).
struct Triad {
    int i = 0, j = 0, k = 0;
    auto operator<=>(const Triad&) const = default;
};

std::vector<Triad> all_triads(int n);
std::size_t triad_count(int n);

/// Natural triad inconsistency: max of the cycle ratio and its inverse.
/// Always >= 1, equal to 1 exactly when a_ik = a_ij * a_jk.
double triad_ti(double a_ij, double a_jk, double a_ik);
/// Koczkodaj triad inconsistency, in [0, 1). Equals 1 - 1/triad_ti.
double triad_ki(double a_ij, double a_jk, double a_ik);

/// Worst triad value over the whole matrix. Requires order >= 3.
double matrix_ti(const CompletePcm& matrix);
double matrix_ki(const CompletePcm& matrix);

/// All triad TI values sorted non-increasing; the lexicographic objective.
class ThetaVector {
public:
    // Sorts the values non-increasing; each must be >= 1 (up to fp slack).
    static ThetaVector from_values(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t u) const { return values_[u]; }

private:
    explicit ThetaVector(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

ThetaVector theta_vector(const CompletePcm& matrix);

enum class LexOrder { Less, Equal, Greater };

/// Lexicographic comparison of equal-length sorted vectors. Entries closer
/// than `tol` are treated as equal (LP results carry solver tolerance).
LexOrder lex_compare(const ThetaVector& a, const ThetaVector& b, double tol = 0.0);

}  // namespace lexpcm

#endif  // LEXPCM_PCM_HPP
