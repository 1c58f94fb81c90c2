#pragma once

#include <vector>

#include "divcom/graph.hpp"

namespace divcom {

/// Null model used by modularity and the agglomerative division step:
/// Erdos-Renyi (uniform) or degree-corrected.
enum class ModKind { er, dc };

/// Per-label edge statistics. O counts ordered pairs, so every undirected edge
/// inside a label contributes 2 to the diagonal and a cross edge contributes 1
/// to each of O_ts and O_st.
struct PartitionStats {
  int M = 0;
  std::vector<double> O;    ///< row-major M x M ordered-pair counts
  std::vector<double> O_t;  ///< row sums of O
  std::vector<double> f;    ///< label frequencies n_t / n
  double L = 0.0;

  double o(int t, int s) const { return O[static_cast<std::size_t>(t) * M + s]; }
};

PartitionStats partition_stats(const Graph& g, const Labeling& e);

/// Normalized modularity with the uniform null: sum_t { O_tt/L - f_t^2 }.
double modularity_er(const Graph& g, const Labeling& e);

/// Normalized modularity with the degree-preserving null:
/// sum_t { O_tt/L - (O_t/L)^2 }.
double modularity_dc(const Graph& g, const Labeling& e);

double modularity(const Graph& g, const Labeling& e, ModKind kind);

}  // namespace divcom
