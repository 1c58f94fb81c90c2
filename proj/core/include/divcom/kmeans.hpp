#pragma once

#include <cstdint>
#include <vector>

namespace divcom {

struct KmeansResult {
  std::vector<int> labels;      ///< size n, values 0..K-1
  std::vector<double> centers;  ///< row-major K x d
  double inertia = 0.0;         ///< sum of squared distances to assigned centers
};

/// Lloyd's algorithm with k-means++ seeding, re-run `restarts` times from
/// derived seeds; the lowest-inertia run wins (first such run on ties).
/// Assignment ties go to the lowest center index; a cluster that empties
/// during iteration is refilled with the worst-fitting point (exact duplicate
/// degeneracies can still leave clusters empty in the final assignment).
/// Deterministic given (points, K, restarts, seed).
KmeansResult kmeans(const std::vector<double>& points, int n, int d, int K,
                    int restarts = 10, int max_iter = 100,
                    std::uint64_t seed = 0);

}  // namespace divcom
