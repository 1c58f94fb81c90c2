#pragma once

#include <cstdint>
#include <vector>

#include "divcom/block_model.hpp"
#include "divcom/dendrogram.hpp"
#include "divcom/graph.hpp"
#include "divcom/model_selection.hpp"

namespace divcom {

struct PipelineConfig {
  ModelKind model = ModelKind::sbm;
  DetectorKind detector = DetectorKind::ssp;
  GroupSelect group;    ///< how to cut the division dendrogram
  int K_max = 10;       ///< per-group cap for model selection
  double lambda = 0.25;
  std::uint64_t seed = 0;
  int jobs = 1;         ///< worker threads for the per-group phase
};

/// The natural pairing: ssp for the plain block model, score for the
/// degree-corrected one.
DetectorKind default_detector(ModelKind model);

struct GroupReport {
  std::vector<int> nodes;  ///< global node ids, ascending
  int K_hat = 1;
  Labeling local;          ///< communities 1..K_hat over `nodes`
  std::vector<double> scores;  ///< selection scores, index K-1
  int zero_rows = 0;       ///< isolated embedding rows (ssp)
  bool collapsed = false;  ///< empty-cluster flag (vsbm)
  double selection_ms = 0.0;
  double detection_ms = 0.0;
};

struct DetectionReport {
  int G_hat = 1;
  Labeling g_hat;  ///< recovered groups
  Labeling c_hat;  ///< recovered communities; group t's local label k maps to
                   ///< sum of earlier groups' K_hat plus k
  int K_total = 0;
  std::vector<GroupReport> groups;
  std::vector<double> B_hat;      ///< row-major K_total x K_total
  std::vector<double> theta_hat;  ///< size n for the degree-corrected model
  double division_ms = 0.0;
  double selection_ms = 0.0;  ///< summed over groups
  double detection_ms = 0.0;  ///< summed over groups
  double combination_ms = 0.0;
};

/// Divide-and-conquer detection. Part I groups the nodes with greedy
/// agglomeration (uniform null for sbm, degree-corrected for dcsbm); Part II
/// independently picks K and labels each group's induced subgraph, with
/// group t seeded by split_seed(seed, t) so results are identical under any
/// `jobs`; Part III concatenates the local labelings and fits B (and theta).
/// Groups with fewer than two nodes become a single community directly, and
/// K_max is capped at the group size. Throws NumericError when the graph has
/// no edges; std::invalid_argument on bad config.
DetectionReport run_pipeline(const Graph& g, const PipelineConfig& cfg);

/// Plug-in block rates over unordered pairs: B_kl = edges(k,l) / (n_k n_l)
/// off the diagonal, B_kk = 2 edges(k,k) / (n_k (n_k - 1)); a singleton's
/// diagonal entry is 0.
std::vector<double> estimate_B(const Graph& g, const Labeling& c);

/// Degree parameters normalized within communities: theta_i = d_i n_c / vol(c),
/// so each community averages to 1. An entirely zero-degree community gets
/// theta = 1.
std::vector<double> estimate_theta(const Graph& g, const Labeling& c);

/// Model-based link probability for pair (i, j): B_hat for sbm, clipped
/// theta_i theta_j B_hat for dcsbm.
double link_score(const DetectionReport& rep, ModelKind model, int i, int j);

}  // namespace divcom
