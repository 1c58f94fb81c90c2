#pragma once

#include <cstdint>
#include <vector>

#include "divcom/graph.hpp"

namespace divcom {

struct VemConfig {
  int K = 1;
  double tol = 1e-6;  ///< relative ELBO change threshold
  int max_sweeps = 200;
  enum class Init { spectral, random } init = Init::spectral;
  std::uint64_t seed = 0;
};

struct VsbmResult {
  Labeling labels;              ///< row argmax of tau, 1..K
  std::vector<double> tau;      ///< row-major n x K variational posteriors
  std::vector<double> pi_hat;   ///< size K
  std::vector<double> B_hat;    ///< row-major K x K
  double elbo = 0.0;            ///< final value
  std::vector<double> elbo_trace;  ///< one entry per sweep, non-decreasing
  int restarts_used = 0;        ///< perturbed re-inits taken after collapses
  bool collapsed = false;       ///< a cluster stayed empty through all retries
};

/// Coordinate-ascent variational EM for the Bernoulli block model. Each sweep
/// updates every row posterior in order against the current aggregates, then
/// refreshes pi and B from the soft counts; sweeps stop when the relative
/// ELBO change drops below tol. A run whose smallest soft cluster mass falls
/// under 1e-3 is restarted from a perturbed initialization (at most three
/// times); if the collapse persists the last run is returned with `collapsed`
/// set. Spectral initialization falls back to random when the embedding is
/// degenerate. Throws std::invalid_argument when K is out of range.
VsbmResult detect_vsbm(const Graph& g, const VemConfig& cfg);

}  // namespace divcom
