#ifndef LEXPCM_METRICS_HPP
#define LEXPCM_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>

#include "lexpcm/pcm.hpp"

namespace lexpcm {

/// Incompatibility index: 100 * ((1/n^2) sum_ij a_ij * b_ji - 1).
/// Nonnegative, zero exactly when the matrices coincide.
double ici(const CompletePcm& a, const CompletePcm& b);

/// Saaty consistency index (lambda_max - n) / (n - 1).
double consistency_index(const CompletePcm& matrix);

/// Random-index values per (order, missing count), either loaded from a file
/// or estimated by simulation.
class RiTable {
public:
    enum class Provenance { UserSupplied, Estimated };
    struct Entry {
        double value = 0.0;
        Provenance provenance = Provenance::Estimated;
    };

    // File format: "n m value" per line, '#' starts a comment.
    static RiTable load(std::istream& in);
    static RiTable load_file(const std::string& path);

    void set(int n, int m, double value, Provenance provenance);
    std::optional<Entry> lookup(int n, int m) const;
    // Throws ConfigError when the entry is absent.
    double require(int n, int m) const;
    // Estimate and cache the entry when absent; returns its value.
    double ensure(int n, int m, int samples = 10000, std::uint64_t seed = 20000913);

    const std::map<std::pair<int, int>, Entry>& entries() const { return entries_; }

private:
    std::map<std::pair<int, int>, Entry> entries_;
};

/// Consistency ratio of an incomplete matrix: the consistency index of its
/// eigenvalue-optimal completion divided by the (n, m) random index.
double cr_incomplete(const IncompletePcm& matrix, const RiTable& ri);

/// Mean consistency index of eigenvalue-optimal fills over `samples` random
/// Saaty-scale incomplete matrices with connected comparison graphs.
/// Deterministic for a fixed seed.
double estimate_random_index(int n, int m, int samples, std::uint64_t seed);

}  // namespace lexpcm

#endif  // LEXPCM_METRICS_HPP
