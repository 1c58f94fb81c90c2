#pragma once

#include <cstdint>
#include <vector>

namespace divcom {

enum class ModelKind { sbm, dcsbm };

/// Block model parameters: K communities with symmetric link probabilities B,
/// community frequencies pi, and a partition of communities into G groups.
struct BlockModel {
  int K = 0;
  int G = 0;
  std::vector<double> B;      ///< row-major K x K, entries in [0,1], symmetric
  std::vector<double> pi;     ///< size K, nonnegative, sums to 1
  std::vector<int> group_of;  ///< size K, values 1..G, surjective

  double b(int a, int c) const { return B[static_cast<std::size_t>(a) * K + c]; }

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

/// Discrete degree-variable law with unit mean: P(theta = values[u]) = probs[u].
struct DegreeLaw {
  std::vector<double> values;  ///< positive
  std::vector<double> probs;   ///< distribution over values

  void validate() const;
};

struct ConditionSbm {
  bool holds = false;
  double B0 = 0.0;  ///< pi^T B pi
};

/// Grouped-structure separation test: every same-group entry of B (diagonal
/// included) must exceed B0 and every cross-group entry must fall below it.
ConditionSbm check_condition_sbm(const BlockModel& m);

struct ConditionDcsbm {
  bool holds = false;
  std::vector<double> Gamma;  ///< row-major K x K
};

/// Degree-corrected analogue. Builds W_ab = pi~_a pi~_b B_ab / B~0 from the
/// joint community/degree frequencies tau_au = pi_a * probs_u, then checks the
/// sign pattern of Gamma = W - (W1)(W1)^T on off-diagonal pairs: positive for
/// same-group pairs, negative across groups. The diagonal is excluded: the
/// rank-one correction can push Gamma_aa either way even for cleanly grouped
/// models, so it carries no grouping signal.
ConditionDcsbm check_condition_dcsbm(const BlockModel& m, const DegreeLaw& law);

}  // namespace divcom
