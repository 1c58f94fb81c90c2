#pragma once

#include <utility>
#include <vector>

#include "divcom/graph.hpp"
#include "divcom/modularity.hpp"

namespace divcom {

/// Full agglomerative merge history. The m-th merge (0-based) takes the
/// partition with n-m clusters to one with n-m-1 by absorbing cluster `gone`
/// into cluster `kept` (cluster ids are the founding node ids; kept < gone).
struct Dendrogram {
  struct Merge {
    int kept, gone;
    double dq;
  };

  int n = 0;
  ModKind kind = ModKind::er;
  std::vector<Merge> merges;       ///< size n-1
  std::vector<double> q_at_level;  ///< [j] = modularity with j clusters; [0] unused

  /// Partition with exactly j clusters, labeled 1..j by first appearance.
  Labeling labels_at_level(int j) const;
};

/// Greedy agglomeration: start from singletons and repeatedly apply the merge
/// with the largest modularity increase among connected cluster pairs
/// (max-heap with lazy invalidation). Once no connected pair remains, leftover
/// components are merged in ascending cluster-id order with their exact dq.
/// Ties on dq break toward the smallest (kept, gone) pair.
Dendrogram fast_greedy(const Graph& g, ModKind kind);

/// How to cut the dendrogram into groups.
struct GroupSelect {
  enum class Mode { fixed, max, threshold };
  Mode mode = Mode::max;
  int G = 1;            ///< fixed mode: cut level
  double delta = 0.01;  ///< threshold mode: minimum accepted q increment
};

/// Cut the dendrogram. fixed: exactly G clusters. max: the level with the
/// largest q (fewest clusters on ties). threshold: accept levels j = 2, 3, ...
/// while q_j improves on the last accepted q by more than delta; stop at the
/// first failure.
std::pair<int, Labeling> select_group_count(const Dendrogram& d,
                                            const GroupSelect& sel);

}  // namespace divcom
