#include "divcom/dendrogram.hpp"

#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace divcom {

namespace {

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Labeling Dendrogram::labels_at_level(int j) const {
  if (j < 1 || j > n) throw std::invalid_argument("dendrogram level out of range");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int m = 0; m < n - j; ++m)
    parent[uf_find(parent, merges[m].gone)] = uf_find(parent, merges[m].kept);

  Labeling lab;
  lab.of.assign(n, 0);
  std::vector<int> name(n, 0);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf_find(parent, i);
    if (name[r] == 0) name[r] = ++next;
    lab.of[i] = name[r];
  }
  lab.M = next;
  return lab;
}

Dendrogram fast_greedy(const Graph& g, ModKind kind) {
  if (g.total_degree == 0) throw std::invalid_argument("graph has no edges");
  const int n = g.n;
  const double L = static_cast<double>(g.total_degree);

  Dendrogram d;
  d.n = n;
  d.kind = kind;
  d.merges.reserve(n > 0 ? n - 1 : 0);
  d.q_at_level.assign(n + 1, 0.0);

  // w[slot[t]][slot[s]] = O_ts / L between live clusters; aa[t] is f_t (er)
  // or O_t / L (dc). Rows are indexed through `slot` so a merge can keep the
  // larger neighbor map and fold the smaller one into it no matter which
  // cluster survives in name; `owner` maps a physical row back to its label.
  std::vector<std::unordered_map<int, double>> w(n);
  for (int i = 0; i < n; ++i) {
    w[i].reserve(g.degree[i]);
    for (int j : g.neighbors(i)) w[i].emplace(j, 1.0 / L);
  }
  std::vector<double> aa(n);
  for (int i = 0; i < n; ++i)
    aa[i] = kind == ModKind::er ? 1.0 / n : g.degree[i] / L;
  std::vector<int> slot(n), owner(n), parent(n);
  std::iota(slot.begin(), slot.end(), 0);
  std::iota(owner.begin(), owner.end(), 0);
  std::iota(parent.begin(), parent.end(), 0);

  double q = 0.0;
  for (int i = 0; i < n; ++i) q -= aa[i] * aa[i];
  d.q_at_level[n] = q;

  struct Entry {
    double dq;
    int t, s;
  };
  struct Lower {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.dq != b.dq) return a.dq < b.dq;
      if (a.t != b.t) return a.t > b.t;
      return a.s > b.s;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Lower> heap;
  for (int t = 0; t < n; ++t)
    for (const auto& [s, v] : w[t])
      if (t < s) heap.push({2.0 * (v - aa[t] * aa[s]), t, s});

  std::vector<char> alive(n, 1);
  std::vector<std::pair<int, double>> folded;  // scratch for the merge step
  int level = n;

  while (level > 1) {
    int t = -1, s = -1;
    double dq = 0.0;
    // Entries are lazy: values drift down when their clusters grow and labels
    // go stale when a cluster is absorbed, so each popped entry is first
    // renormalized (union-find the labels, recompute dq) and requeued unless
    // it is already canonical and current. Increases are never lazy — the
    // merge below pushes fresh entries for every pair whose weight grew — so
    // an entry smaller than the recomputed value is always superseded.
    while (!heap.empty()) {
      Entry e = heap.top();
      int a = uf_find(parent, e.t), b = uf_find(parent, e.s);
      if (a == b) {
        heap.pop();
        continue;
      }
      if (b < a) std::swap(a, b);
      auto it = w[slot[a]].find(slot[b]);
      if (it == w[slot[a]].end()) {
        heap.pop();
        continue;
      }
      double cur = 2.0 * (it->second - aa[a] * aa[b]);
      if (a != e.t || b != e.s || cur < e.dq) {
        heap.pop();
        heap.push({cur, a, b});
        continue;
      }
      if (cur > e.dq) {  // an exact entry for this pair is queued above
        heap.pop();
        continue;
      }
      t = a;
      s = b;
      dq = cur;
      heap.pop();
      break;
    }

    if (t < 0) break;  // no connected pair left

    d.merges.push_back({t, s, dq});
    q += dq;
    d.q_at_level[--level] = q;

    // Fold the smaller neighbor map into the larger; the surviving physical
    // row becomes t's. Only folded pairs can gain weight, so only they need
    // fresh heap entries after aa[t] grows.
    int dying = slot[s], kept = slot[t];
    if (w[dying].size() > w[kept].size()) std::swap(dying, kept);
    folded.clear();
    for (const auto& [x, v] : w[dying]) {
      if (x == kept) continue;
      double nv = (w[kept][x] += v);
      w[x][kept] = nv;
      w[x].erase(dying);
      folded.emplace_back(x, nv);
    }
    w[kept].erase(dying);
    w[dying].clear();
    slot[t] = kept;
    owner[kept] = t;
    parent[s] = t;
    alive[s] = 0;
    aa[t] += aa[s];

    for (const auto& [x, v] : folded) {
      int xl = owner[x];
      int a = t < xl ? t : xl, b = t < xl ? xl : t;
      heap.push({2.0 * (v - aa[a] * aa[b]), a, b});
    }
  }

  if (level > 1) {
    // Disconnected leftovers: chain the surviving clusters in ascending id
    // order. Their maps are empty, so each merge costs exactly -2*aa_t*aa_s.
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
      if (alive[i]) ids.push_back(i);
    int t = ids[0];
    for (std::size_t k = 1; k < ids.size(); ++k) {
      int s = ids[k];
      double dq = -2.0 * aa[t] * aa[s];
      d.merges.push_back({t, s, dq});
      q += dq;
      d.q_at_level[--level] = q;
      aa[t] += aa[s];
      alive[s] = 0;
    }
  }

  return d;
}

std::pair<int, Labeling> select_group_count(const Dendrogram& d,
                                            const GroupSelect& sel) {
  switch (sel.mode) {
    case GroupSelect::Mode::fixed:
      if (sel.G < 1 || sel.G > d.n)
        throw std::invalid_argument("fixed group count out of range");
      return {sel.G, d.labels_at_level(sel.G)};
    case GroupSelect::Mode::max: {
      int best = 1;
      for (int j = 1; j <= d.n; ++j)
        if (d.q_at_level[j] > d.q_at_level[best]) best = j;
      return {best, d.labels_at_level(best)};
    }
    case GroupSelect::Mode::threshold: {
      int G = 1;
      double q = d.q_at_level[1];
      for (int j = 2; j <= d.n; ++j) {
        if (d.q_at_level[j] - q > sel.delta) {
          G = j;
          q = d.q_at_level[j];
        } else {
          break;
        }
      }
      return {G, d.labels_at_level(G)};
    }
  }
  throw std::invalid_argument("unknown group selection mode");
}

}  // namespace divcom
