#include "divcom/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "divcom/errors.hpp"
#include "divcom/kmeans.hpp"
#include "divcom/lanczos.hpp"

namespace divcom {

namespace {

void check_target(const Graph& g, int K) {
  if (K < 1 || K > g.n) throw std::invalid_argument("cluster count out of range");
  if (g.total_degree == 0)
    throw NumericError("spectral embedding of an edgeless graph is degenerate");
}

Labeling cluster_rows(const std::vector<double>& rows, int n, int d,
                      const SpectralConfig& cfg) {
  auto km = kmeans(rows, n, d, cfg.K, cfg.restarts, cfg.max_iter, cfg.seed);
  Labeling lab;
  lab.of.resize(n);
  for (int i = 0; i < n; ++i) lab.of[i] = km.labels[i] + 1;
  lab.M = cfg.K;
  return lab;
}

}  // namespace

Labeling detect_ssp(const Graph& g, const SpectralConfig& cfg, int* zero_rows) {
  check_target(g, cfg.K);
  const int n = g.n;
  const int K = cfg.K;
  double tau = cfg.tau < 0.0 ? static_cast<double>(g.total_degree) / n : cfg.tau;

  std::vector<double> s(n);  // D_tau^{-1/2}, zero where the diagonal is zero
  for (int i = 0; i < n; ++i) {
    double di = g.degree[i] + tau;
    s[i] = di > 0.0 ? 1.0 / std::sqrt(di) : 0.0;
  }
  MatVec apply = [&](const double* x, double* y) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j : g.neighbors(i)) acc += s[j] * x[j];
      y[i] = s[i] * acc;
    }
  };
  EigenPairs top = top_eigenpairs(n, K, apply);

  std::vector<double> rows = top.vectors;  // row-major n x K
  std::vector<char> zero(n, 0);
  int nz = 0;
  for (int i = 0; i < n; ++i) {
    double* r = rows.data() + static_cast<std::size_t>(i) * K;
    double norm = 0.0;
    for (int k = 0; k < K; ++k) norm += r[k] * r[k];
    norm = std::sqrt(norm);
    if (norm < 1e-8) {
      zero[i] = 1;
      ++nz;
      std::fill(r, r + K, 0.0);
    } else {
      for (int k = 0; k < K; ++k) r[k] /= norm;
    }
  }
  if (zero_rows) *zero_rows = nz;
  if (nz == n) throw NumericError("spectral embedding is identically zero");

  if (nz == 0) return cluster_rows(rows, n, K, cfg);

  // Cluster the informative rows, then attach zero rows to the largest
  // cluster (smallest label on ties).
  std::vector<double> live;
  live.reserve(static_cast<std::size_t>(n - nz) * K);
  std::vector<int> idx;
  idx.reserve(n - nz);
  for (int i = 0; i < n; ++i) {
    if (zero[i]) continue;
    idx.push_back(i);
    const double* r = rows.data() + static_cast<std::size_t>(i) * K;
    live.insert(live.end(), r, r + K);
  }
  if (static_cast<int>(idx.size()) < K)
    throw NumericError("fewer informative embedding rows than clusters");
  SpectralConfig sub = cfg;
  Labeling on_live = cluster_rows(live, static_cast<int>(idx.size()), K, sub);

  std::vector<int> size(K, 0);
  for (int v : on_live.of) ++size[v - 1];
  int big = static_cast<int>(std::max_element(size.begin(), size.end()) -
                             size.begin());

  Labeling lab;
  lab.of.assign(n, big + 1);
  for (std::size_t t = 0; t < idx.size(); ++t) lab.of[idx[t]] = on_live.of[t];
  lab.M = K;
  return lab;
}

Labeling detect_score(const Graph& g, const SpectralConfig& cfg) {
  check_target(g, cfg.K);
  const int n = g.n;
  const int K = cfg.K;
  if (K == 1) return Labeling{std::vector<int>(n, 1), 1};

  MatVec apply = [&](const double* x, double* y) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j : g.neighbors(i)) acc += x[j];
      y[i] = acc;
    }
  };
  EigenPairs top = top_eigenpairs(n, K, apply);

  const double T = std::log(static_cast<double>(n));
  std::vector<double> ratios(static_cast<std::size_t>(n) * (K - 1));
  for (int i = 0; i < n; ++i) {
    double lead = top.vectors[static_cast<std::size_t>(i) * K];
    for (int k = 1; k < K; ++k) {
      double num = top.vectors[static_cast<std::size_t>(i) * K + k];
      double r;
      if (std::abs(lead) < 1e-12) {
        // A numerically vanishing numerator over a vanishing denominator has
        // no usable sign; clipping only rescues a genuine overflow.
        if (std::abs(num) < 1e-12)
          throw NumericError(
              "leading eigenvector vanishes where the others do; ratios undefined");
        r = num > 0.0 ? T : -T;
      } else {
        r = std::clamp(num / lead, -T, T);
      }
      ratios[static_cast<std::size_t>(i) * (K - 1) + (k - 1)] = r;
    }
  }
  return cluster_rows(ratios, n, K - 1, cfg);
}

}  // namespace divcom
