#pragma once

#include <cstdint>
#include <vector>

#include "divcom/block_model.hpp"
#include "divcom/graph.hpp"
#include "divcom/rng.hpp"

namespace divcom {

struct SbmSample {
  Graph graph;
  Labeling communities;
  Labeling groups;
};

struct DcsbmSample {
  Graph graph;
  Labeling communities;
  Labeling groups;
  std::vector<double> theta;
};

/// Sample a network with i.i.d. community labels from pi and independent
/// Bernoulli(B_{c_i c_j}) edges. Expected O(edges) time: block pairs are
/// enumerated with geometric skips rather than per-pair coin flips.
SbmSample sample_sbm(const BlockModel& m, int n, std::uint64_t seed);

/// Degree-corrected variant: theta_i i.i.d. from `law`, edge probability
/// min(1, theta_i theta_j B_{c_i c_j}) via thinning against the block maximum.
DcsbmSample sample_dcsbm(const BlockModel& m, const DegreeLaw& law, int n,
                         std::uint64_t seed);

/// Random grouped model in the simulation design: within-group entries
/// ~ U(0.01, 1) (symmetrized), cross-group ~ U(0, 0.01), uniform pi. Redrawn
/// until check_condition_sbm holds; throws NumericError after max_tries.
BlockModel sample_grouped_model(const std::vector<int>& group_sizes, Rng& rng,
                                int max_tries = 200000);

/// Two-point unit-mean law: values {x, m*x} with x = 2/(m+1), each with
/// probability 1/2.
DegreeLaw two_point_degree_law(double m = 1.5);

struct DesignSample {
  BlockModel model;
  DegreeLaw law;  ///< empty for plain SBM
  Graph graph;
  Labeling communities;
  Labeling groups;
  std::vector<double> theta;  ///< empty for plain SBM
};

/// Draw a grouped model via sample_grouped_model, then sample one network from
/// it (with the two-point degree law for the degree-corrected kind).
DesignSample sample_grouped_design(ModelKind kind, int n,
                                    const std::vector<int>& group_sizes,
                                    std::uint64_t seed);

}  // namespace divcom
