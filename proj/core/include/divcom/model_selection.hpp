#pragma once

#include <cstdint>
#include <vector>

#include "divcom/graph.hpp"

namespace divcom {

/// Community detector used when a caller (model selection, the pipeline)
/// dispatches by name rather than calling detect_* directly.
enum class DetectorKind { ssp, score, vsbm };

struct SelectionResult {
  int K_hat = 1;
  std::vector<double> scores;  ///< penalized profile likelihood, index K-1
  std::vector<double> loglik;  ///< unpenalized profile likelihood, index K-1
};

/// Bernoulli profile log-likelihood of a hard labeling under the blockmodel
/// with plug-in rates B_kl = O'_kl / n'_kl over unordered node pairs. Rates
/// are clamped to [1/n^2, 1 - 1/n^2] so the score stays finite; empty cells
/// contribute nothing.
double profile_loglik(const Graph& g, const Labeling& e);

/// The labeling select_k scores for a given K: the constant labeling for
/// K = 1, otherwise the detector fit under exactly this seed. When the
/// detector cannot fit (no edges, fewer informative rows than clusters) the
/// round-robin labeling i mod K + 1 stands in. Optional outputs receive
/// detect_ssp's zero-row count and detect_vsbm's collapse flag.
Labeling selection_labels(const Graph& g, DetectorKind detector, int K,
                          std::uint64_t seed, int* zero_rows = nullptr,
                          bool* collapsed = nullptr);

/// Pick the number of communities by a penalized profile likelihood: fit each
/// K = 1..K_max via selection_labels with seed stream split_seed(seed, K),
/// score ell(K) - lambda * K(K+1)/2 * n * ln n, and return the best K
/// (smallest on ties). The round-robin fallback inside selection_labels gets
/// priced out by the penalty, so an edgeless graph selects K = 1.
/// Throws std::invalid_argument when K_max < 1 or K_max > n.
SelectionResult select_k(const Graph& g, int K_max, DetectorKind detector,
                         double lambda = 0.25, std::uint64_t seed = 0);

}  // namespace divcom
