#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace divcom {

/// Undirected simple graph in compressed sparse form. Both directions of every
/// edge are stored, so degree sums and per-label ordered-pair counts are direct
/// scans. Immutable after construction; safe to share across threads.
struct Graph {
  int n = 0;
  std::vector<std::size_t> offset;  ///< size n+1
  std::vector<int> adj;             ///< size L; each row sorted ascending
  std::vector<int> degree;          ///< size n
  std::size_t total_degree = 0;     ///< L = sum of degrees = 2 * #edges

  std::span<const int> neighbors(int i) const {
    return {adj.data() + offset[i], adj.data() + offset[i + 1]};
  }

  bool has_edge(int i, int j) const;

  /// Unique edges as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> edge_list() const;
};

/// Build a graph from an arbitrary pair list: pairs are symmetrized and
/// deduplicated. Throws std::invalid_argument on out-of-range ids or loops.
Graph build_graph(const std::vector<std::pair<int, int>>& edges, int n);

/// Subgraph induced by `nodes`, relabeled 0..|nodes|-1 in the given order,
/// together with the map from new ids back to original ids.
std::pair<Graph, std::vector<int>> induced_subgraph(
    const Graph& g, const std::vector<int>& nodes);

/// Node -> label assignment; labels take values in {1..M}.
struct Labeling {
  std::vector<int> of;  ///< size n
  int M = 0;

  int n() const { return static_cast<int>(of.size()); }
};

/// Remap arbitrary integer labels to the contiguous range 1..M, ordered by
/// first appearance.
Labeling compact_labels(const std::vector<int>& raw);

}  // namespace divcom
