#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "divcom/generators.hpp"
#include "divcom/graph.hpp"
#include "divcom/modularity.hpp"
#include "divcom/vsbm.hpp"

using divcom::BlockModel;
using divcom::detect_vsbm;
using divcom::Graph;
using divcom::sample_sbm;
using divcom::VemConfig;
using divcom::VsbmResult;

namespace {

BlockModel planted(double in, double out) {
  BlockModel m;
  m.K = 2;
  m.G = 2;
  m.B = {in, out, out, in};
  m.pi = {0.5, 0.5};
  m.group_of = {1, 2};
  return m;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

void check_rows_stochastic(const VsbmResult& r, int n, int K) {
  REQUIRE(r.tau.size() == static_cast<std::size_t>(n) * K);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) {
      double t = r.tau[static_cast<std::size_t>(i) * K + k];
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
      s += t;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }
}

void check_monotone(const std::vector<double>& trace) {
  for (std::size_t t = 1; t < trace.size(); ++t)
    CHECK(trace[t] >= trace[t - 1] - 1e-9 * std::max(1.0, std::abs(trace[t])));
}

}  // namespace

TEST_CASE("one cluster has a closed-form fit") {
  auto smp = sample_sbm(planted(0.4, 0.1), 80, 3);
  VemConfig cfg;
  cfg.K = 1;
  auto res = detect_vsbm(smp.graph, cfg);
  double n = 80.0, L = static_cast<double>(smp.graph.total_degree);
  CHECK(res.B_hat[0] == doctest::Approx(L / (n * (n - 1))).epsilon(1e-9));
  CHECK(res.pi_hat[0] == doctest::Approx(1.0));
  for (int v : res.labels.of) CHECK(v == 1);
  check_monotone(res.elbo_trace);
}

TEST_CASE("a strong planted bisection is recovered exactly") {
  BlockModel m = planted(0.5, 0.05);
  int exact = 0;
  for (int s = 0; s < 10; ++s) {
    auto smp = sample_sbm(m, 200, 900 + s);
    VemConfig cfg;
    cfg.K = 2;
    cfg.seed = 40 + s;
    auto res = detect_vsbm(smp.graph, cfg);
    if (same_partition(res.labels.of, smp.communities.of)) ++exact;
    check_monotone(res.elbo_trace);
  }
  CHECK(exact >= 9);
}

TEST_CASE("block estimates converge to empirical block densities") {
  auto smp = sample_sbm(planted(0.5, 0.05), 200, 77);
  VemConfig cfg;
  cfg.K = 2;
  cfg.seed = 5;
  auto res = detect_vsbm(smp.graph, cfg);
  REQUIRE(same_partition(res.labels.of, smp.communities.of));

  // Hard-count block MLE from the fitted labels.
  auto st = divcom::partition_stats(smp.graph, res.labels);
  std::vector<double> cnt(2, 0.0);
  for (int v : res.labels.of) cnt[v - 1] += 1.0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      double pairs = k == l ? cnt[k] * (cnt[k] - 1) : cnt[k] * cnt[l];
      double want = st.o(k, l) / pairs;
      CHECK(res.B_hat[static_cast<std::size_t>(k) * 2 + l] ==
            doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("soft assignments are posteriors over clusters") {
  auto smp = sample_sbm(planted(0.4, 0.08), 120, 13);
  VemConfig cfg;
  cfg.K = 3;
  cfg.seed = 21;
  auto res = detect_vsbm(smp.graph, cfg);
  check_rows_stochastic(res, 120, 3);
  double s = 0.0;
  for (double p : res.pi_hat) s += p;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      double b = res.B_hat[static_cast<std::size_t>(k) * 3 + l];
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
      CHECK(b == doctest::Approx(res.B_hat[static_cast<std::size_t>(l) * 3 + k])
                     .epsilon(1e-9));
    }
}

TEST_CASE("the bound rises sweep over sweep under either initialization") {
  auto smp = sample_sbm(planted(0.3, 0.1), 150, 57);
  for (auto init : {VemConfig::Init::spectral, VemConfig::Init::random}) {
    VemConfig cfg;
    cfg.K = 2;
    cfg.init = init;
    cfg.seed = 63;
    auto res = detect_vsbm(smp.graph, cfg);
    CHECK(res.elbo_trace.size() >= 2);
    check_monotone(res.elbo_trace);
    CHECK(res.elbo == doctest::Approx(res.elbo_trace.back()));
  }
}

TEST_CASE("fits are reproducible") {
  auto smp = sample_sbm(planted(0.35, 0.1), 100, 83);
  VemConfig cfg;
  cfg.K = 2;
  cfg.seed = 97;
  auto a = detect_vsbm(smp.graph, cfg);
  auto b = detect_vsbm(smp.graph, cfg);
  CHECK(a.labels.of == b.labels.of);
  CHECK(a.tau == b.tau);
  CHECK(a.elbo == b.elbo);
  CHECK(a.restarts_used == b.restarts_used);
}

TEST_CASE("collapse handling stays within its retry budget") {
  // A clique has no 3-way structure; whatever the outcome, the retry
  // accounting and flags must be consistent.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) edges.emplace_back(i, j);
  Graph g = divcom::build_graph(edges, 12);
  VemConfig cfg;
  cfg.K = 3;
  cfg.seed = 1;
  auto res = detect_vsbm(g, cfg);
  CHECK(res.restarts_used >= 0);
  CHECK(res.restarts_used <= 3);
  if (res.restarts_used < 3) CHECK_FALSE(res.collapsed);
  check_monotone(res.elbo_trace);
  check_rows_stochastic(res, 12, 3);
}

TEST_CASE("bad configurations are rejected") {
  auto smp = sample_sbm(planted(0.4, 0.1), 30, 5);
  VemConfig cfg;
  cfg.K = 31;
  CHECK_THROWS_AS(detect_vsbm(smp.graph, cfg), std::invalid_argument);
  cfg.K = 2;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(detect_vsbm(smp.graph, cfg), std::invalid_argument);
  cfg.tol = 1e-6;
  cfg.max_sweeps = 0;
  CHECK_THROWS_AS(detect_vsbm(smp.graph, cfg), std::invalid_argument);
}
