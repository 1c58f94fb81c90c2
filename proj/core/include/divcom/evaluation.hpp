#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "divcom/graph.hpp"
#include "divcom/modularity.hpp"
#include "divcom/pipeline.hpp"

namespace divcom {

/// Normalized mutual information 2 I(a;b) / (H(a) + H(b)) with natural logs,
/// in [0, 1]. When both entropies vanish the partitions are the trivial
/// one-block partition on both sides, so the value is 1. Throws
/// std::invalid_argument on size mismatch or empty labelings.
double nmi(const Labeling& a, const Labeling& b);

/// NMI between the true and recovered group memberships (division quality
/// rather than community quality; same measure, node-level group labels).
double g_nmi(const Labeling& groups, const Labeling& groups_hat);

/// Node pairs (i < j) hidden for link-prediction evaluation.
struct MaskSet {
  int n = 0;
  double proportion = 0.0;
  std::vector<std::pair<int, int>> pairs;  ///< sorted lexicographically
};

/// Sample round(proportion * n(n-1)/2) distinct unordered pairs without
/// replacement (Floyd's algorithm, so cost scales with the sample, not with
/// n^2). proportion must lie in [0, 1); n >= 2.
MaskSet make_mask(int n, double proportion, std::uint64_t seed);

/// Area under the ROC curve by the rank statistic: mid-ranks over the pooled
/// scores, so ties contribute 1/2. `truth` entries are 0/1. Throws
/// NumericError when truth is all one class; std::invalid_argument on size
/// mismatch or empty input.
double auc(const std::vector<double>& scores, const std::vector<int>& truth);

struct MaskedLinkEval {
  MaskSet mask;
  DetectionReport report;  ///< pipeline fit on the masked graph
  double auc = 0.0;
};

/// Hold out a mask of node pairs, set them to non-edges, rerun the pipeline on
/// the masked graph, score the held-out pairs with the fitted model, and
/// measure AUC against the original adjacency. proportion must lie in (0, 1);
/// pipeline and AUC errors propagate (a mask that swallows every edge, or
/// hides only non-edges, is such an error).
MaskedLinkEval masked_link_eval(const Graph& g, const PipelineConfig& cfg,
                                double proportion, std::uint64_t seed);

struct OracleBest {
  double q = 0.0;
  Labeling labels;
};

/// Exhaustive best-modularity partition over all set partitions with at most
/// max_groups blocks (restricted-growth enumeration; first optimum wins).
/// Only for small graphs: throws std::invalid_argument when n > 12 or the
/// graph has no edges.
OracleBest oracle_best_partition(const Graph& g, ModKind kind,
                                 int max_groups = 12);

}  // namespace divcom
