#include "divcom/block_model.hpp"

#include <cmath>
#include <stdexcept>

#include "divcom/errors.hpp"

namespace divcom {

void BlockModel::validate() const {
  if (K < 1) throw std::invalid_argument("block model needs K >= 1");
  if (G < 1 || G > K) throw std::invalid_argument("group count out of range");
  if (B.size() != static_cast<std::size_t>(K) * K)
    throw std::invalid_argument("B must be K x K");
  if (pi.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("pi must have length K");
  if (group_of.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("group_of must have length K");

  double s = 0.0;
  for (double p : pi) {
    if (p < 0.0) throw std::invalid_argument("pi entries must be nonnegative");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-9)
    throw std::invalid_argument("pi must sum to 1");

  for (int a = 0; a < K; ++a)
    for (int c = 0; c < K; ++c) {
      double v = b(a, c);
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("B entries must lie in [0,1]");
      if (v != b(c, a)) throw std::invalid_argument("B must be symmetric");
    }

  std::vector<char> seen(G, 0);
  for (int v : group_of) {
    if (v < 1 || v > G)
      throw std::invalid_argument("group_of values must lie in 1..G");
    seen[v - 1] = 1;
  }
  for (char c : seen)
    if (!c) throw std::invalid_argument("group_of must cover every group");
}

void DegreeLaw::validate() const {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("degree law needs matching values and probs");
  double mass = 0.0, mean = 0.0;
  for (std::size_t u = 0; u < values.size(); ++u) {
    if (values[u] <= 0.0)
      throw std::invalid_argument("degree values must be positive");
    if (probs[u] < 0.0)
      throw std::invalid_argument("degree probs must be nonnegative");
    mass += probs[u];
    mean += probs[u] * values[u];
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("degree probs must sum to 1");
  if (std::abs(mean - 1.0) > 1e-9)
    throw std::invalid_argument("degree variable must have mean 1");
}

ConditionSbm check_condition_sbm(const BlockModel& m) {
  m.validate();
  ConditionSbm out;
  for (int a = 0; a < m.K; ++a)
    for (int c = 0; c < m.K; ++c) out.B0 += m.pi[a] * m.pi[c] * m.b(a, c);

  out.holds = true;
  for (int a = 0; a < m.K; ++a)
    for (int c = 0; c < m.K; ++c) {
      bool same = m.group_of[a] == m.group_of[c];
      if (same ? !(m.b(a, c) > out.B0) : !(m.b(a, c) < out.B0))
        out.holds = false;
    }
  return out;
}

ConditionDcsbm check_condition_dcsbm(const BlockModel& m, const DegreeLaw& law) {
  m.validate();
  law.validate();
  const int K = m.K;

  std::vector<double> pi_tilde(K, 0.0);
  for (int a = 0; a < K; ++a)
    for (std::size_t u = 0; u < law.probs.size(); ++u)
      pi_tilde[a] += m.pi[a] * law.probs[u];

  double B0 = 0.0;
  for (int a = 0; a < K; ++a)
    for (int c = 0; c < K; ++c) B0 += pi_tilde[a] * pi_tilde[c] * m.b(a, c);
  if (B0 <= 0.0) throw NumericError("average connection probability is zero");

  ConditionDcsbm out;
  out.Gamma.assign(static_cast<std::size_t>(K) * K, 0.0);
  std::vector<double> row(K, 0.0);
  for (int a = 0; a < K; ++a)
    for (int c = 0; c < K; ++c) {
      double wac = pi_tilde[a] * pi_tilde[c] * m.b(a, c) / B0;
      out.Gamma[static_cast<std::size_t>(a) * K + c] = wac;
      row[a] += wac;
    }
  for (int a = 0; a < K; ++a)
    for (int c = 0; c < K; ++c)
      out.Gamma[static_cast<std::size_t>(a) * K + c] -= row[a] * row[c];

  out.holds = true;
  for (int a = 0; a < K; ++a)
    for (int c = 0; c < K; ++c) {
      if (a == c) continue;
      bool same = m.group_of[a] == m.group_of[c];
      double gamma = out.Gamma[static_cast<std::size_t>(a) * K + c];
      if (same ? !(gamma > 0.0) : !(gamma < 0.0)) out.holds = false;
    }
  return out;
}

}  // namespace divcom
