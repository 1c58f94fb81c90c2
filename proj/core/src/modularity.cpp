#include "divcom/modularity.hpp"

#include <stdexcept>

namespace divcom {

namespace {

void check_labeling(const Graph& g, const Labeling& e) {
  if (e.n() != g.n) throw std::invalid_argument("labeling size != node count");
  if (e.M < 1 && g.n > 0) throw std::invalid_argument("labeling has no labels");
  for (int v : e.of)
    if (v < 1 || v > e.M)
      throw std::invalid_argument("label out of range 1..M");
}

}  // namespace

PartitionStats partition_stats(const Graph& g, const Labeling& e) {
  check_labeling(g, e);
  PartitionStats st;
  st.M = e.M;
  st.L = static_cast<double>(g.total_degree);
  st.O.assign(static_cast<std::size_t>(e.M) * e.M, 0.0);
  st.O_t.assign(e.M, 0.0);
  st.f.assign(e.M, 0.0);
  for (int i = 0; i < g.n; ++i) {
    int t = e.of[i] - 1;
    st.f[t] += 1.0;
    for (int j : g.neighbors(i))
      st.O[static_cast<std::size_t>(t) * e.M + (e.of[j] - 1)] += 1.0;
  }
  for (int t = 0; t < e.M; ++t) {
    st.f[t] /= g.n;
    for (int s = 0; s < e.M; ++s)
      st.O_t[t] += st.O[static_cast<std::size_t>(t) * e.M + s];
  }
  return st;
}

namespace {

// Diagonal counts O_tt, row totals O_t, and sizes in O(L + M) without the full
// M x M matrix, so modularity stays cheap when M is large.
struct DiagStats {
  std::vector<double> diag, tot, cnt;
};

DiagStats diag_stats(const Graph& g, const Labeling& e) {
  DiagStats d;
  d.diag.assign(e.M, 0.0);
  d.tot.assign(e.M, 0.0);
  d.cnt.assign(e.M, 0.0);
  for (int i = 0; i < g.n; ++i) {
    int t = e.of[i] - 1;
    d.cnt[t] += 1.0;
    d.tot[t] += g.degree[i];
    for (int j : g.neighbors(i))
      if (e.of[j] == e.of[i]) d.diag[t] += 1.0;
  }
  return d;
}

}  // namespace

double modularity_er(const Graph& g, const Labeling& e) {
  check_labeling(g, e);
  if (g.total_degree == 0) throw std::invalid_argument("graph has no edges");
  auto d = diag_stats(g, e);
  double L = static_cast<double>(g.total_degree), q = 0.0;
  for (int t = 0; t < e.M; ++t) {
    double f = d.cnt[t] / g.n;
    q += d.diag[t] / L - f * f;
  }
  return q;
}

double modularity_dc(const Graph& g, const Labeling& e) {
  check_labeling(g, e);
  if (g.total_degree == 0) throw std::invalid_argument("graph has no edges");
  auto d = diag_stats(g, e);
  double L = static_cast<double>(g.total_degree), q = 0.0;
  for (int t = 0; t < e.M; ++t) {
    double a = d.tot[t] / L;
    q += d.diag[t] / L - a * a;
  }
  return q;
}

double modularity(const Graph& g, const Labeling& e, ModKind kind) {
  return kind == ModKind::er ? modularity_er(g, e) : modularity_dc(g, e);
}

}  // namespace divcom
