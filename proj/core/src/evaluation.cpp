#include "divcom/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "divcom/errors.hpp"
#include "divcom/rng.hpp"
#include "pair_index.hpp"

namespace divcom {

double nmi(const Labeling& a, const Labeling& b) {
  int n = a.n();
  if (n == 0 || b.n() != n)
    throw std::invalid_argument("nmi: labelings must be nonempty and equal size");
  int Ma = a.M, Mb = b.M;
  std::vector<double> joint(static_cast<std::size_t>(Ma) * Mb, 0.0);
  std::vector<double> ra(Ma, 0.0), rb(Mb, 0.0);
  for (int i = 0; i < n; ++i) {
    int k = a.of[i] - 1, l = b.of[i] - 1;
    joint[static_cast<std::size_t>(k) * Mb + l] += 1;
    ra[k] += 1;
    rb[l] += 1;
  }
  double ha = 0.0, hb = 0.0, info = 0.0;
  for (double c : ra)
    if (c > 0) ha -= c / n * std::log(c / n);
  for (double c : rb)
    if (c > 0) hb -= c / n * std::log(c / n);
  for (int k = 0; k < Ma; ++k)
    for (int l = 0; l < Mb; ++l) {
      double c = joint[static_cast<std::size_t>(k) * Mb + l];
      if (c > 0) info += c / n * std::log(c * n / (ra[k] * rb[l]));
    }
  if (ha + hb == 0.0) return 1.0;  // both trivial one-block partitions
  return std::clamp(2.0 * info / (ha + hb), 0.0, 1.0);
}

double g_nmi(const Labeling& groups, const Labeling& groups_hat) {
  return nmi(groups, groups_hat);
}

MaskSet make_mask(int n, double proportion, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_mask: need n >= 2");
  if (!(proportion >= 0.0 && proportion < 1.0))
    throw std::invalid_argument("make_mask: proportion must be in [0, 1)");
  auto total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  auto m = std::llround(proportion * static_cast<double>(total));
  MaskSet mask;
  mask.n = n;
  mask.proportion = proportion;
  Rng rng(seed);
  std::unordered_set<std::int64_t> picked;
  picked.reserve(static_cast<std::size_t>(m) * 2);
  for (std::int64_t j = total - m; j < total; ++j) {
    auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j + 1)));
    picked.insert(picked.count(t) ? j : t);
  }
  std::vector<std::int64_t> idx(picked.begin(), picked.end());
  std::sort(idx.begin(), idx.end());
  mask.pairs.reserve(idx.size());
  for (auto k : idx) mask.pairs.push_back(detail::unrank_pair(k, n));
  return mask;
}

double auc(const std::vector<double>& scores, const std::vector<int>& truth) {
  auto m = scores.size();
  if (m == 0 || truth.size() != m)
    throw std::invalid_argument("auc: scores and truth must be nonempty and equal size");
  double pos = 0.0;
  for (int t : truth) {
    if (t != 0 && t != 1) throw std::invalid_argument("auc: truth entries must be 0/1");
    pos += t;
  }
  double neg = static_cast<double>(m) - pos;
  if (pos == 0.0 || neg == 0.0)
    throw NumericError("auc: truth has a single class");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });
  double rank_pos = 0.0;
  for (std::size_t lo = 0; lo < m;) {
    std::size_t hi = lo;
    while (hi + 1 < m && scores[order[hi + 1]] == scores[order[lo]]) ++hi;
    double mid = (static_cast<double>(lo) + static_cast<double>(hi)) / 2 + 1;
    for (std::size_t r = lo; r <= hi; ++r)
      if (truth[order[r]]) rank_pos += mid;
    lo = hi + 1;
  }
  return (rank_pos - pos * (pos + 1) / 2) / (pos * neg);
}

MaskedLinkEval masked_link_eval(const Graph& g, const PipelineConfig& cfg,
                                double proportion, std::uint64_t seed) {
  if (!(proportion > 0.0 && proportion < 1.0))
    throw std::invalid_argument("masked_link_eval: proportion must be in (0, 1)");
  MaskedLinkEval ev;
  ev.mask = make_mask(g.n, proportion, seed);
  std::unordered_set<std::int64_t> hidden;
  hidden.reserve(ev.mask.pairs.size() * 2);
  for (auto [i, j] : ev.mask.pairs)
    hidden.insert(static_cast<std::int64_t>(i) * g.n + j);
  std::vector<std::pair<int, int>> kept;
  for (auto [i, j] : g.edge_list())
    if (!hidden.count(static_cast<std::int64_t>(i) * g.n + j))
      kept.emplace_back(i, j);
  ev.report = run_pipeline(build_graph(kept, g.n), cfg);
  std::vector<double> scores;
  std::vector<int> truth;
  scores.reserve(ev.mask.pairs.size());
  truth.reserve(ev.mask.pairs.size());
  for (auto [i, j] : ev.mask.pairs) {
    scores.push_back(link_score(ev.report, cfg.model, i, j));
    truth.push_back(g.has_edge(i, j) ? 1 : 0);
  }
  ev.auc = auc(scores, truth);
  return ev;
}

OracleBest oracle_best_partition(const Graph& g, ModKind kind, int max_groups) {
  if (g.n < 1 || g.n > 12)
    throw std::invalid_argument("oracle_best_partition: only for 1 <= n <= 12");
  if (g.total_degree == 0)
    throw std::invalid_argument("oracle_best_partition: graph has no edges");
  if (max_groups < 1)
    throw std::invalid_argument("oracle_best_partition: max_groups must be >= 1");
  int n = g.n;
  std::vector<int> a(n, 0);
  OracleBest best;
  best.q = -std::numeric_limits<double>::infinity();
  // Restricted-growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1, values
  // capped below max_groups; each string is one set partition.
  auto visit = [&](auto&& self, int i, int mx) -> void {
    if (i == n) {
      Labeling e;
      e.of.resize(n);
      for (int v = 0; v < n; ++v) e.of[v] = a[v] + 1;
      e.M = mx + 1;
      double q = modularity(g, e, kind);
      if (q > best.q) {
        best.q = q;
        best.labels = e;
      }
      return;
    }
    int top = std::min(mx + 1, max_groups - 1);
    for (int v = 0; v <= top; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(mx, v));
    }
  };
  visit(visit, 1, 0);
  return best;
}

}  // namespace divcom
