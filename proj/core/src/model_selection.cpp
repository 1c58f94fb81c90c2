#include "divcom/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "divcom/detectors.hpp"
#include "divcom/errors.hpp"
#include "divcom/modularity.hpp"
#include "divcom/rng.hpp"
#include "divcom/vsbm.hpp"

namespace divcom {

namespace {

Labeling round_robin(int n, int K) {
  Labeling e;
  e.of.resize(n);
  for (int i = 0; i < n; ++i) e.of[i] = i % K + 1;
  e.M = K;
  return e;
}

}  // namespace

Labeling selection_labels(const Graph& g, DetectorKind detector, int K,
                          std::uint64_t seed, int* zero_rows, bool* collapsed) {
  if (zero_rows) *zero_rows = 0;
  if (collapsed) *collapsed = false;
  if (K == 1) return round_robin(g.n, 1);
  try {
    switch (detector) {
      case DetectorKind::ssp:
        return detect_ssp(g, {.K = K, .seed = seed}, zero_rows);
      case DetectorKind::score:
        return detect_score(g, {.K = K, .seed = seed});
      case DetectorKind::vsbm: {
        auto r = detect_vsbm(g, {.K = K, .seed = seed});
        if (collapsed) *collapsed = r.collapsed;
        return r.labels;
      }
    }
    throw std::invalid_argument("selection_labels: unknown detector");
  } catch (const NumericError&) {
    return round_robin(g.n, K);
  }
}

double profile_loglik(const Graph& g, const Labeling& e) {
  if (e.n() != g.n)
    throw std::invalid_argument("profile_loglik: labeling size mismatch");
  auto st = partition_stats(g, e);
  auto n = static_cast<double>(g.n);
  double lo = 1.0 / (n * n), hi = 1.0 - lo;
  std::vector<double> sz(st.M, 0.0);
  for (int i = 0; i < g.n; ++i) sz[e.of[i] - 1] += 1;
  double ll = 0.0;
  for (int k = 0; k < st.M; ++k)
    for (int l = k; l < st.M; ++l) {
      double pairs = k == l ? sz[k] * (sz[k] - 1) / 2 : sz[k] * sz[l];
      if (pairs <= 0) continue;
      double ones = k == l ? st.o(k, k) / 2 : st.o(k, l);
      double b = std::clamp(ones / pairs, lo, hi);
      ll += ones * std::log(b) + (pairs - ones) * std::log1p(-b);
    }
  return ll;
}

SelectionResult select_k(const Graph& g, int K_max, DetectorKind detector,
                         double lambda, std::uint64_t seed) {
  if (K_max < 1 || K_max > g.n)
    throw std::invalid_argument("select_k: K_max must be in [1, n], got " +
                                std::to_string(K_max));
  SelectionResult res;
  double pen_unit = static_cast<double>(g.n) * std::log(g.n);
  for (int K = 1; K <= K_max; ++K) {
    Labeling e = selection_labels(g, detector, K, split_seed(seed, K));
    double ll = profile_loglik(g, e);
    double score = ll - lambda * (K * (K + 1) / 2.0) * pen_unit;
    res.loglik.push_back(ll);
    res.scores.push_back(score);
    if (K == 1 || score > res.scores[res.K_hat - 1]) res.K_hat = K;
  }
  return res;
}

}  // namespace divcom
