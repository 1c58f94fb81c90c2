#include "divcom/lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "divcom/errors.hpp"
#include "divcom/rng.hpp"

namespace divcom {

namespace {

// Deterministic filler direction for breakdown recovery.
Eigen::VectorXd pseudo_vector(int n, std::uint64_t counter) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t z = mix64(counter * 0x9e3779b97f4a7c15ULL + i + 1);
    v[i] = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  return v;
}

void sign_fix(Eigen::Ref<Eigen::VectorXd> v) {
  int arg = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      arg = i;
    }
  if (v[arg] < 0.0) v = -v;
}

}  // namespace

namespace {

// Exact path for small operators: materialize and diagonalize. Hand-built
// small graphs often carry exact eigenvalue multiplicities that a single
// Krylov sequence cannot resolve; dense decomposition handles them.
EigenPairs dense_top(int n, int K, const MatVec& apply) {
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n), col(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(e.data(), col.data());
    M.col(j) = col;
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double xa = std::abs(es.eigenvalues()[a]), xb = std::abs(es.eigenvalues()[b]);
    if (xa != xb) return xa > xb;
    return es.eigenvalues()[a] > es.eigenvalues()[b];
  });
  EigenPairs out;
  out.values.resize(K);
  out.vectors.assign(static_cast<std::size_t>(n) * K, 0.0);
  for (int k = 0; k < K; ++k) {
    out.values[k] = es.eigenvalues()[order[k]];
    Eigen::VectorXd v = es.eigenvectors().col(order[k]);
    sign_fix(v);
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(i) * K + k] = v[i];
  }
  return out;
}

}  // namespace

EigenPairs top_eigenpairs(int n, int K, const MatVec& apply, int max_iter,
                          double tol) {
  if (n < 1) throw std::invalid_argument("operator dimension must be positive");
  if (K < 1 || K > n) throw std::invalid_argument("eigenpair count out of range");
  if (n <= 64) return dense_top(n, K, apply);
  if (max_iter <= 0) max_iter = std::min(n, std::max(6 * K + 40, 150));
  max_iter = std::min(max_iter, n);

  Eigen::MatrixXd V(n, max_iter);  // Lanczos basis, columns orthonormal
  Eigen::VectorXd alpha(max_iter), beta(max_iter);
  V.col(0) = pseudo_vector(n, 0).normalized();

  Eigen::VectorXd w(n);
  std::uint64_t filler = 0;
  double scale = 1.0;
  int m = 0;  // basis size after the current step

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  std::vector<int> order;

  auto ritz_ready = [&]() -> bool {
    if (m < K) return false;
    tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1));
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double xa = std::abs(tri.eigenvalues()[a]), xb = std::abs(tri.eigenvalues()[b]);
      if (xa != xb) return xa > xb;
      return tri.eigenvalues()[a] > tri.eigenvalues()[b];
    });
    double tail = m < n ? beta[m - 1] : 0.0;
    for (int k = 0; k < K; ++k) {
      double theta = tri.eigenvalues()[order[k]];
      double resid = std::abs(tail * tri.eigenvectors()(m - 1, order[k]));
      if (resid > tol * std::max(1.0, std::abs(theta))) return false;
    }
    return true;
  };

  bool done = false;
  while (m < max_iter && !done) {
    int j = m;
    apply(V.col(j).data(), w.data());
    alpha[j] = V.col(j).dot(w);
    w -= alpha[j] * V.col(j);
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    // Full reorthogonalization, twice for stability.
    w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    scale = std::max({scale, std::abs(alpha[j]), w.norm()});
    m = j + 1;

    double nb = w.norm();
    if (nb <= 1e-12 * scale) {
      // Invariant subspace found. Stop if the basis already answers; else
      // continue in a fresh deterministic direction (block boundary beta = 0).
      beta[j] = 0.0;
      if (ritz_ready() || m >= n) {
        done = true;
      } else if (m < max_iter) {
        Eigen::VectorXd f;
        double fn = 0.0;
        do {
          f = pseudo_vector(n, ++filler);
          f -= V.leftCols(m) * (V.leftCols(m).transpose() * f);
          fn = f.norm();
        } while (fn <= 1e-8);
        V.col(m) = f / fn;
      }
    } else {
      beta[j] = nb;
      if (m < max_iter) V.col(m) = w / nb;
      if (ritz_ready()) done = true;
    }
  }

  if (!done && !ritz_ready())
    throw NumericError("eigensolver did not converge within the iteration cap");

  EigenPairs out;
  out.values.resize(K);
  out.vectors.assign(static_cast<std::size_t>(n) * K, 0.0);
  for (int k = 0; k < K; ++k) {
    out.values[k] = tri.eigenvalues()[order[k]];
    Eigen::VectorXd v = V.leftCols(m) * tri.eigenvectors().col(order[k]);
    v.normalize();
    sign_fix(v);
    for (int i = 0; i < n; ++i) out.vectors[static_cast<std::size_t>(i) * K + k] = v[i];
  }
  return out;
}

}  // namespace divcom
