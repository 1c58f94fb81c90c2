#include "divcom/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "divcom/errors.hpp"
#include "pair_index.hpp"

namespace divcom {

using detail::unrank_pair;

namespace {

std::vector<int> draw_labels(const BlockModel& m, int n, Rng& rng) {
  std::vector<double> cum(m.K);
  double s = 0.0;
  for (int a = 0; a < m.K; ++a) cum[a] = (s += m.pi[a]);
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = rng.categorical(cum) + 1;
  return c;
}

// Visit each cell of a [0, total) strip independently with probability p,
// skipping geometrically between hits.
template <class Visit>
void bernoulli_strip(std::int64_t total, double p, Rng& rng, Visit&& visit) {
  if (p <= 0.0 || total <= 0) return;
  std::int64_t pos = rng.geometric(p);
  while (pos < total) {
    visit(pos);
    pos += 1 + rng.geometric(p);
  }
}

std::vector<std::pair<int, int>> draw_edges(const BlockModel& m,
                                            const std::vector<int>& c, int n,
                                            Rng& rng,
                                            const std::vector<double>* theta,
                                            double theta_max) {
  std::vector<std::vector<int>> members(m.K);
  for (int i = 0; i < n; ++i) members[c[i] - 1].push_back(i);

  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < m.K; ++a) {
    for (int b = a; b < m.K; ++b) {
      const auto& ia = members[a];
      const auto& ib = members[b];
      double base = m.b(a, b);
      if (base == 0.0 || ia.empty() || ib.empty()) continue;
      double cap = theta ? std::min(1.0, theta_max * theta_max * base) : base;
      if (a == b) {
        auto sz = static_cast<std::int64_t>(ia.size());
        bernoulli_strip(sz * (sz - 1) / 2, cap, rng, [&](std::int64_t k) {
          auto [u, v] = unrank_pair(k, sz);
          int i = ia[u], j = ia[v];
          if (!theta ||
              rng.unit() * cap < std::min(1.0, (*theta)[i] * (*theta)[j] * base))
            edges.emplace_back(i, j);
        });
      } else {
        auto na = static_cast<std::int64_t>(ia.size());
        auto nb = static_cast<std::int64_t>(ib.size());
        bernoulli_strip(na * nb, cap, rng, [&](std::int64_t k) {
          int i = ia[static_cast<std::size_t>(k / nb)];
          int j = ib[static_cast<std::size_t>(k % nb)];
          if (!theta ||
              rng.unit() * cap < std::min(1.0, (*theta)[i] * (*theta)[j] * base))
            edges.emplace_back(i, j);
        });
      }
    }
  }
  return edges;
}

Labeling groups_from(const BlockModel& m, const std::vector<int>& c) {
  Labeling g;
  g.of.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) g.of[i] = m.group_of[c[i] - 1];
  g.M = m.G;
  return g;
}

}  // namespace

SbmSample sample_sbm(const BlockModel& m, int n, std::uint64_t seed) {
  m.validate();
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  Rng label_rng(split_seed(seed, 0));
  Rng edge_rng(split_seed(seed, 1));
  auto c = draw_labels(m, n, label_rng);
  auto edges = draw_edges(m, c, n, edge_rng, nullptr, 0.0);
  SbmSample out;
  out.graph = build_graph(edges, n);
  out.communities = {c, m.K};
  out.groups = groups_from(m, c);
  return out;
}

DcsbmSample sample_dcsbm(const BlockModel& m, const DegreeLaw& law, int n,
                         std::uint64_t seed) {
  m.validate();
  law.validate();
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  Rng label_rng(split_seed(seed, 0));
  Rng edge_rng(split_seed(seed, 1));
  Rng theta_rng(split_seed(seed, 2));

  auto c = draw_labels(m, n, label_rng);
  std::vector<double> cum(law.probs.size());
  double s = 0.0;
  for (std::size_t u = 0; u < law.probs.size(); ++u) cum[u] = (s += law.probs[u]);
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) theta[i] = law.values[theta_rng.categorical(cum)];
  double theta_max = *std::max_element(law.values.begin(), law.values.end());

  auto edges = draw_edges(m, c, n, edge_rng, &theta, theta_max);
  DcsbmSample out;
  out.graph = build_graph(edges, n);
  out.communities = {c, m.K};
  out.groups = groups_from(m, c);
  out.theta = std::move(theta);
  return out;
}

BlockModel sample_grouped_model(const std::vector<int>& group_sizes, Rng& rng,
                                int max_tries) {
  if (group_sizes.empty())
    throw std::invalid_argument("group_sizes must be nonempty");
  int K = 0;
  for (int s : group_sizes) {
    if (s < 1) throw std::invalid_argument("group sizes must be positive");
    K += s;
  }

  BlockModel m;
  m.K = K;
  m.G = static_cast<int>(group_sizes.size());
  m.pi.assign(K, 1.0 / K);
  m.group_of.reserve(K);
  for (int t = 0; t < m.G; ++t)
    for (int s = 0; s < group_sizes[t]; ++s) m.group_of.push_back(t + 1);

  m.B.assign(static_cast<std::size_t>(K) * K, 0.0);
  for (int tries = 0; tries < max_tries; ++tries) {
    for (int a = 0; a < K; ++a)
      for (int b = a; b < K; ++b) {
        double v = m.group_of[a] == m.group_of[b] ? rng.uniform(0.01, 1.0)
                                                  : rng.uniform(0.0, 0.01);
        m.B[static_cast<std::size_t>(a) * K + b] = v;
        m.B[static_cast<std::size_t>(b) * K + a] = v;
      }
    if (check_condition_sbm(m).holds) return m;
  }
  throw NumericError("no admissible grouped block matrix after " +
                     std::to_string(max_tries) + " draws");
}

DegreeLaw two_point_degree_law(double m) {
  if (m <= 0.0) throw std::invalid_argument("degree ratio must be positive");
  // One rounding per value (2m/(m+1), not m*(2/(m+1))) so the default law is
  // exactly {0.8, 1.2}.
  return {{2.0 / (m + 1.0), 2.0 * m / (m + 1.0)}, {0.5, 0.5}};
}

DesignSample sample_grouped_design(ModelKind kind, int n,
                                    const std::vector<int>& group_sizes,
                                    std::uint64_t seed) {
  Rng model_rng(split_seed(seed, 3));
  DesignSample out;
  out.model = sample_grouped_model(group_sizes, model_rng);
  if (kind == ModelKind::sbm) {
    auto s = sample_sbm(out.model, n, seed);
    out.graph = std::move(s.graph);
    out.communities = std::move(s.communities);
    out.groups = std::move(s.groups);
  } else {
    out.law = two_point_degree_law();
    auto s = sample_dcsbm(out.model, out.law, n, seed);
    out.graph = std::move(s.graph);
    out.communities = std::move(s.communities);
    out.groups = std::move(s.groups);
    out.theta = std::move(s.theta);
  }
  return out;
}

}  // namespace divcom
