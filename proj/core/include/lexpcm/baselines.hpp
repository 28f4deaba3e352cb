#ifndef LEXPCM_BASELINES_HPP
#define LEXPCM_BASELINES_HPP

#include <vector>

#include "lexpcm/lex_completion.hpp"
#include "lexpcm/pcm.hpp"

namespace lexpcm {

/// Priority vector on the percent scale: positive weights summing to 100.
struct WeightVector {
    std::vector<double> weights;
};

/// Perron (maximal) eigenvalue by power iteration; relative convergence
/// 1e-12, at most 10000 iterations. Always >= order, with equality exactly
/// for consistent matrices.
double lambda_max(const CompletePcm& matrix);

/// Perron eigenvector, percent-normalized.
WeightVector em_weights(const CompletePcm& matrix);

/// Row geometric means, percent-normalized.
WeightVector gm_weights(const CompletePcm& matrix);

/// Completion minimizing the Perron eigenvalue of the filled matrix (the
/// consistency-ratio-optimal filling). Cyclic coordinate descent in log
/// space; each coordinate solved by golden-section search over
/// log x in [log 1/9999, log 9999], where lambda_max is convex. Requires a
/// connected comparison graph (throws NonUniqueError otherwise).
CompletionResult cr_optimal_complete(const IncompletePcm& matrix);

/// Completion from the logarithmic least squares weights: solves the reduced
/// Laplacian normal equations of the known-comparison graph and fills
/// x_ij = w_i / w_j. Requires a connected graph (throws NonUniqueError).
CompletionResult lls_optimal_complete(const IncompletePcm& matrix);

}  // namespace lexpcm

#endif  // LEXPCM_BASELINES_HPP
