#include "divcom/vsbm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "divcom/detectors.hpp"
#include "divcom/errors.hpp"
#include "divcom/rng.hpp"

namespace divcom {

namespace {

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

struct Cavi {
  const Graph& g;
  const VemConfig& cfg;
  int n, K;
  std::vector<double> tau;    // row-major n x K
  std::vector<double> N;      // soft cluster masses
  std::vector<double> pi, B;  // current M-step estimates
  std::vector<double> logB, log1mB;

  Cavi(const Graph& g_, const VemConfig& c)
      : g(g_), cfg(c), n(g_.n), K(c.K), N(c.K), pi(c.K),
        B(static_cast<std::size_t>(c.K) * c.K),
        logB(B.size()), log1mB(B.size()) {}

  double* row(int i) { return tau.data() + static_cast<std::size_t>(i) * K; }

  void refresh_masses() {
    std::fill(N.begin(), N.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < K; ++k) N[k] += row(i)[k];
  }

  void m_step() {
    for (int k = 0; k < K; ++k) pi[k] = N[k] / n;

    std::vector<double> T(B.size(), 0.0);  // soft ordered edge counts
    for (int i = 0; i < n; ++i)
      for (int j : g.neighbors(i))
        for (int k = 0; k < K; ++k) {
          double tik = row(i)[k];
          if (tik == 0.0) continue;
          const double* tj = row(j);
          double* Tk = T.data() + static_cast<std::size_t>(k) * K;
          for (int l = 0; l < K; ++l) Tk[l] += tik * tj[l];
        }

    std::vector<double> self(B.size(), 0.0);  // sum_i tau_ik tau_il
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
          self[static_cast<std::size_t>(k) * K + l] += row(i)[k] * row(i)[l];

    for (int k = 0; k < K; ++k)
      for (int l = 0; l < K; ++l) {
        std::size_t kl = static_cast<std::size_t>(k) * K + l;
        double denom = N[k] * N[l] - self[kl];
        double b = denom > 1e-12 ? T[kl] / denom : 0.0;
        B[kl] = std::clamp(b, 1e-10, 1.0 - 1e-10);
        logB[kl] = std::log(B[kl]);
        log1mB[kl] = std::log1p(-B[kl]);
      }
  }

  void e_sweep() {
    std::vector<double> E(K), score(K);
    for (int i = 0; i < n; ++i) {
      std::fill(E.begin(), E.end(), 0.0);
      for (int j : g.neighbors(i)) {
        const double* tj = row(j);
        for (int l = 0; l < K; ++l) E[l] += tj[l];
      }
      double* ti = row(i);
      for (int k = 0; k < K; ++k) {
        double acc = safe_log(pi[k]);
        const double* lb = logB.data() + static_cast<std::size_t>(k) * K;
        const double* l1 = log1mB.data() + static_cast<std::size_t>(k) * K;
        for (int l = 0; l < K; ++l)
          acc += E[l] * (lb[l] - l1[l]) + (N[l] - ti[l]) * l1[l];
        score[k] = acc;
      }
      double top = *std::max_element(score.begin(), score.end());
      double z = 0.0;
      for (int k = 0; k < K; ++k) z += (score[k] = std::exp(score[k] - top));
      for (int k = 0; k < K; ++k) {
        double nv = score[k] / z;
        N[k] += nv - ti[k];
        ti[k] = nv;
      }
    }
  }

  double elbo() const {
    double ent = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < K; ++k) {
        double t = tau[static_cast<std::size_t>(i) * K + k];
        if (t > 0.0) ent += t * (safe_log(pi[k]) - std::log(t));
      }

    std::vector<double> T(B.size(), 0.0), self(B.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double* ti = tau.data() + static_cast<std::size_t>(i) * K;
      for (int j : g.neighbors(i)) {
        const double* tj = tau.data() + static_cast<std::size_t>(j) * K;
        for (int k = 0; k < K; ++k)
          for (int l = 0; l < K; ++l)
            T[static_cast<std::size_t>(k) * K + l] += ti[k] * tj[l];
      }
      for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
          self[static_cast<std::size_t>(k) * K + l] += ti[k] * ti[l];
    }
    double lik = 0.0;
    for (int k = 0; k < K; ++k)
      for (int l = 0; l < K; ++l) {
        std::size_t kl = static_cast<std::size_t>(k) * K + l;
        double pairs = N[k] * N[l] - self[kl];
        lik += log1mB[kl] * (pairs - T[kl]) + logB[kl] * T[kl];
      }
    return ent + 0.5 * lik;
  }

  VsbmResult run(std::vector<double> tau0) {
    tau = std::move(tau0);
    refresh_masses();
    m_step();

    VsbmResult res;
    double prev = 0.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      e_sweep();
      m_step();
      double cur = elbo();
      res.elbo_trace.push_back(cur);
      if (sweep > 0 && std::abs(cur - prev) <= cfg.tol * std::max(1.0, std::abs(cur)))
        break;
      prev = cur;
    }

    res.elbo = res.elbo_trace.back();
    res.tau = tau;
    res.pi_hat = pi;
    res.B_hat = B;
    res.labels.of.resize(n);
    res.labels.M = K;
    for (int i = 0; i < n; ++i) {
      const double* ti = tau.data() + static_cast<std::size_t>(i) * K;
      res.labels.of[i] =
          1 + static_cast<int>(std::max_element(ti, ti + K) - ti);
    }
    res.collapsed = *std::min_element(N.begin(), N.end()) < 1e-3;
    return res;
  }
};

std::vector<double> random_rows(int n, int K, std::uint64_t stream) {
  Rng rng(stream);
  std::vector<double> t(static_cast<std::size_t>(n) * K);
  for (int i = 0; i < n; ++i) {
    double z = 0.0;
    double* r = t.data() + static_cast<std::size_t>(i) * K;
    for (int k = 0; k < K; ++k) z += (r[k] = 0.1 + rng.unit());
    for (int k = 0; k < K; ++k) r[k] /= z;
  }
  return t;
}

}  // namespace

VsbmResult detect_vsbm(const Graph& g, const VemConfig& cfg) {
  const int n = g.n, K = cfg.K;
  if (K < 1 || K > n) throw std::invalid_argument("cluster count out of range");
  if (cfg.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (cfg.max_sweeps < 1) throw std::invalid_argument("need at least one sweep");

  std::vector<double> base;
  if (K == 1) {
    base.assign(static_cast<std::size_t>(n), 1.0);
  } else if (cfg.init == VemConfig::Init::spectral) {
    try {
      SpectralConfig sc;
      sc.K = K;
      sc.seed = split_seed(cfg.seed, 11);
      Labeling lab = detect_ssp(g, sc);
      base.assign(static_cast<std::size_t>(n) * K, 0.1 / (K - 1));
      for (int i = 0; i < n; ++i)
        base[static_cast<std::size_t>(i) * K + (lab.of[i] - 1)] = 0.9;
    } catch (const NumericError&) {
      base = random_rows(n, K, split_seed(cfg.seed, 13));
    }
  } else {
    base = random_rows(n, K, split_seed(cfg.seed, 13));
  }

  Cavi cavi(g, cfg);
  VsbmResult res;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    std::vector<double> t0 = base;
    if (attempt > 0) {
      auto noise = random_rows(n, K, split_seed(cfg.seed, 40 + attempt));
      for (std::size_t x = 0; x < t0.size(); ++x)
        t0[x] = 0.5 * t0[x] + 0.5 * noise[x];
    }
    res = cavi.run(std::move(t0));
    res.restarts_used = attempt;
    if (!res.collapsed) break;
  }
  return res;
}

}  // namespace divcom
