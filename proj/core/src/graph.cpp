#include "divcom/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace divcom {

bool Graph::has_edge(int i, int j) const {
  auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(total_degree / 2);
  for (int i = 0; i < n; ++i)
    for (int j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

Graph build_graph(const std::vector<std::pair<int, int>>& edges, int n) {
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(a) + ", " + std::to_string(b) +
                                  ") with n=" + std::to_string(n));
    if (a == b)
      throw std::invalid_argument("self-loop on node " + std::to_string(a));
  }

  Graph g;
  g.n = n;
  std::vector<std::size_t> count(static_cast<std::size_t>(n) + 1, 0);
  for (auto [a, b] : edges) {
    ++count[static_cast<std::size_t>(a) + 1];
    ++count[static_cast<std::size_t>(b) + 1];
  }
  for (int i = 0; i < n; ++i) count[i + 1] += count[i];

  std::vector<int> flat(2 * edges.size());
  std::vector<std::size_t> fill = count;
  for (auto [a, b] : edges) {
    flat[fill[a]++] = b;
    flat[fill[b]++] = a;
  }

  g.offset.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adj.reserve(flat.size());
  g.degree.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(count[i]);
    auto last = flat.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    g.degree[i] = static_cast<int>(end - first);
    g.adj.insert(g.adj.end(), first, end);
    g.offset[i + 1] = g.adj.size();
  }
  g.total_degree = g.adj.size();
  return g;
}

std::pair<Graph, std::vector<int>> induced_subgraph(
    const Graph& g, const std::vector<int>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("empty node subset");
  std::vector<int> new_id(g.n, -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    int v = nodes[k];
    if (v < 0 || v >= g.n)
      throw std::invalid_argument("subset node out of range: " +
                                  std::to_string(v));
    if (new_id[v] != -1)
      throw std::invalid_argument("duplicate subset node: " + std::to_string(v));
    new_id[v] = static_cast<int>(k);
  }

  Graph s;
  s.n = static_cast<int>(nodes.size());
  s.offset.assign(nodes.size() + 1, 0);
  s.degree.assign(nodes.size(), 0);
  std::vector<int> row;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    row.clear();
    for (int j : g.neighbors(nodes[k]))
      if (new_id[j] != -1) row.push_back(new_id[j]);
    std::sort(row.begin(), row.end());
    s.degree[k] = static_cast<int>(row.size());
    s.adj.insert(s.adj.end(), row.begin(), row.end());
    s.offset[k + 1] = s.adj.size();
  }
  s.total_degree = s.adj.size();
  return {std::move(s), nodes};
}

Labeling compact_labels(const std::vector<int>& raw) {
  Labeling out;
  out.of.resize(raw.size());
  std::unordered_map<int, int> remap;
  remap.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, inserted] =
        remap.try_emplace(raw[i], static_cast<int>(remap.size()) + 1);
    out.of[i] = it->second;
  }
  out.M = static_cast<int>(remap.size());
  return out;
}

}  // namespace divcom
