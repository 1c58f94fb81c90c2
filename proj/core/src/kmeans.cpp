#include "divcom/kmeans.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "divcom/rng.hpp"

namespace divcom {

namespace {

double sq_dist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

KmeansResult one_run(const std::vector<double>& pts, int n, int d, int K,
                     int max_iter, Rng& rng) {
  auto p = [&](int i) { return pts.data() + static_cast<std::size_t>(i) * d; };

  // k-means++: next center drawn proportional to squared distance from the
  // chosen set; degenerate all-zero weights fall back to a uniform pick.
  std::vector<double> centers(static_cast<std::size_t>(K) * d);
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  auto c = [&](int k) { return centers.data() + static_cast<std::size_t>(k) * d; };
  int first = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::copy(p(first), p(first) + d, c(0));
  for (int k = 1; k < K; ++k) {
    double total = 0.0;
    std::vector<double> cum(n);
    for (int i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], sq_dist(p(i), c(k - 1), d));
      cum[i] = (total += dist2[i]);
    }
    int pick;
    if (total > 0.0) {
      for (int i = 0; i < n; ++i) cum[i] /= total;
      pick = static_cast<int>(rng.categorical(cum));
    } else {
      pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    }
    std::copy(p(pick), p(pick) + d, c(k));
  }

  std::vector<int> label(n, -1);
  std::vector<int> count(K);
  std::vector<double> point_d2(n);
  for (int it = 0; it < max_iter; ++it) {
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      int arg = 0;
      double best = sq_dist(p(i), c(0), d);
      for (int k = 1; k < K; ++k) {
        double v = sq_dist(p(i), c(k), d);
        if (v < best) {
          best = v;
          arg = k;
        }
      }
      point_d2[i] = best;
      if (label[i] != arg) {
        label[i] = arg;
        moved = true;
      }
    }
    if (!moved && it > 0) break;

    std::fill(centers.begin(), centers.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (int i = 0; i < n; ++i) {
      ++count[label[i]];
      for (int k = 0; k < d; ++k) c(label[i])[k] += p(i)[k];
    }
    for (int k = 0; k < K; ++k) {
      if (count[k] > 0) {
        for (int x = 0; x < d; ++x) c(k)[x] /= count[k];
        continue;
      }
      // Refill an empty cluster with the worst-fitting point.
      int far = 0;
      for (int i = 1; i < n; ++i)
        if (point_d2[i] > point_d2[far]) far = i;
      std::copy(p(far), p(far) + d, c(k));
      --count[label[far]];
      label[far] = k;
      count[k] = 1;
      point_d2[far] = 0.0;
    }
  }

  // Final assignment against the settled centers.
  KmeansResult out;
  out.labels.assign(n, 0);
  out.inertia = 0.0;
  for (int i = 0; i < n; ++i) {
    int arg = 0;
    double best = sq_dist(p(i), c(0), d);
    for (int k = 1; k < K; ++k) {
      double v = sq_dist(p(i), c(k), d);
      if (v < best) {
        best = v;
        arg = k;
      }
    }
    out.labels[i] = arg;
    out.inertia += best;
  }
  out.centers = std::move(centers);
  return out;
}

}  // namespace

KmeansResult kmeans(const std::vector<double>& points, int n, int d, int K,
                    int restarts, int max_iter, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("empty point set");
  if (K < 1 || K > n) throw std::invalid_argument("cluster count out of range");
  if (points.size() != static_cast<std::size_t>(n) * d)
    throw std::invalid_argument("point buffer size mismatch");
  if (restarts < 1) restarts = 1;

  KmeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(r)));
    KmeansResult cur = one_run(points, n, d, K, max_iter, rng);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best;
}

}  // namespace divcom
