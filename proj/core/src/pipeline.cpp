#include "divcom/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "divcom/errors.hpp"
#include "divcom/rng.hpp"

namespace divcom {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

GroupReport process_group(const Graph& g, const PipelineConfig& cfg,
                          std::vector<int> nodes, std::uint64_t gseed) {
  GroupReport rep;
  rep.nodes = std::move(nodes);
  auto m = static_cast<int>(rep.nodes.size());
  if (m < 2) {
    rep.local.of.assign(m, 1);
    rep.local.M = m > 0 ? 1 : 0;
    return rep;
  }
  auto [sub, back] = induced_subgraph(g, rep.nodes);
  (void)back;  // nodes are already the id map
  int cap = std::min(cfg.K_max, sub.n);

  auto t0 = Clock::now();
  auto sel = select_k(sub, cap, cfg.detector, cfg.lambda, gseed);
  rep.selection_ms = ms_since(t0);
  rep.K_hat = sel.K_hat;
  rep.scores = std::move(sel.scores);

  t0 = Clock::now();
  rep.local = selection_labels(sub, cfg.detector, rep.K_hat,
                               split_seed(gseed, rep.K_hat), &rep.zero_rows,
                               &rep.collapsed);
  rep.detection_ms = ms_since(t0);
  return rep;
}

}  // namespace

DetectorKind default_detector(ModelKind model) {
  return model == ModelKind::sbm ? DetectorKind::ssp : DetectorKind::score;
}

DetectionReport run_pipeline(const Graph& g, const PipelineConfig& cfg) {
  if (g.n < 1) throw std::invalid_argument("run_pipeline: empty graph");
  if (g.total_degree == 0) throw NumericError("run_pipeline: graph has no edges");
  if (cfg.K_max < 1) throw std::invalid_argument("run_pipeline: K_max must be >= 1");
  if (cfg.jobs < 1) throw std::invalid_argument("run_pipeline: jobs must be >= 1");
  if (!(cfg.lambda >= 0))
    throw std::invalid_argument("run_pipeline: lambda must be >= 0");

  DetectionReport rep;

  auto t0 = Clock::now();
  auto dendro = fast_greedy(
      g, cfg.model == ModelKind::sbm ? ModKind::er : ModKind::dc);
  auto [G, g_hat] = select_group_count(dendro, cfg.group);
  rep.G_hat = G;
  rep.g_hat = std::move(g_hat);
  rep.division_ms = ms_since(t0);

  std::vector<std::vector<int>> members(G);
  for (int i = 0; i < g.n; ++i) members[rep.g_hat.of[i] - 1].push_back(i);

  rep.groups.resize(G);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(G);
  auto worker = [&] {
    for (int t = next.fetch_add(1); t < G; t = next.fetch_add(1)) {
      try {
        rep.groups[t] = process_group(g, cfg, std::move(members[t]),
                                      split_seed(cfg.seed, t));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  int threads = std::min(cfg.jobs, G);
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  auto t1 = Clock::now();
  rep.c_hat.of.assign(g.n, 0);
  int offset = 0;
  for (auto& gr : rep.groups) {
    rep.selection_ms += gr.selection_ms;
    rep.detection_ms += gr.detection_ms;
    for (std::size_t r = 0; r < gr.nodes.size(); ++r)
      rep.c_hat.of[gr.nodes[r]] = offset + gr.local.of[r];
    offset += gr.K_hat;
  }
  rep.K_total = offset;
  rep.c_hat.M = offset;
  rep.B_hat = estimate_B(g, rep.c_hat);
  if (cfg.model == ModelKind::dcsbm) rep.theta_hat = estimate_theta(g, rep.c_hat);
  rep.combination_ms = ms_since(t1);
  return rep;
}

std::vector<double> estimate_B(const Graph& g, const Labeling& c) {
  if (c.n() != g.n) throw std::invalid_argument("estimate_B: size mismatch");
  auto st = partition_stats(g, c);
  int K = st.M;
  std::vector<double> sz(K, 0.0);
  for (int i = 0; i < g.n; ++i) sz[c.of[i] - 1] += 1;
  std::vector<double> B(static_cast<std::size_t>(K) * K, 0.0);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < K; ++l) {
      double pairs = k == l ? sz[k] * (sz[k] - 1) : sz[k] * sz[l];
      if (pairs > 0) B[static_cast<std::size_t>(k) * K + l] = st.o(k, l) / pairs;
    }
  return B;
}

std::vector<double> estimate_theta(const Graph& g, const Labeling& c) {
  if (c.n() != g.n) throw std::invalid_argument("estimate_theta: size mismatch");
  std::vector<double> vol(c.M, 0.0), count(c.M, 0.0);
  for (int i = 0; i < g.n; ++i) {
    vol[c.of[i] - 1] += g.degree[i];
    count[c.of[i] - 1] += 1;
  }
  std::vector<double> theta(g.n, 1.0);
  for (int i = 0; i < g.n; ++i) {
    int t = c.of[i] - 1;
    if (vol[t] > 0) theta[i] = g.degree[i] * count[t] / vol[t];
  }
  return theta;
}

double link_score(const DetectionReport& rep, ModelKind model, int i, int j) {
  int K = rep.K_total;
  int a = rep.c_hat.of[i] - 1, b = rep.c_hat.of[j] - 1;
  double p = rep.B_hat[static_cast<std::size_t>(a) * K + b];
  if (model == ModelKind::dcsbm)
    p = std::clamp(rep.theta_hat[i] * rep.theta_hat[j] * p, 0.0, 1.0);
  return p;
}

}  // namespace divcom
