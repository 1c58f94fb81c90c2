#pragma once

#include <cstdint>

#include "divcom/graph.hpp"

namespace divcom {

struct SpectralConfig {
  int K = 1;
  double tau = -1.0;  ///< regularizer; negative means "use the mean degree"
  int restarts = 10;  ///< k-means restarts
  int max_iter = 100;  ///< k-means iteration cap
  std::uint64_t seed = 0;
};

/// Regularized spherical spectral clustering: embed nodes by the top-K
/// eigenvectors (by magnitude) of D_tau^{-1/2} A D_tau^{-1/2} with
/// D_tau = D + tau*I, normalize nonzero embedding rows to unit length, and
/// k-means the rows into K clusters. Rows with zero norm (isolated nodes when
/// tau = 0, unconverged null directions) are attached to the largest cluster;
/// `zero_rows`, when given, receives their count. Labels are 1..K.
/// Throws NumericError when the graph has no edges or the whole embedding is
/// zero; std::invalid_argument when K is out of range.
Labeling detect_ssp(const Graph& g, const SpectralConfig& cfg,
                    int* zero_rows = nullptr);

/// Degree-robust spectral clustering on eigenvector ratios: take the top-K
/// eigenvectors of A, form ratios v_{k+1}(i) / v_1(i) for k = 1..K-1 clipped
/// to [-T, T] with T = log n, and k-means the ratio rows. K = 1 returns the
/// constant labeling. Throws NumericError when the graph has no edges or a
/// ratio is 0/0 (leading-eigenvector zero beyond the clipping remedy).
Labeling detect_score(const Graph& g, const SpectralConfig& cfg);

}  // namespace divcom
