#pragma once

#include <functional>
#include <vector>

namespace divcom {

/// Apply a symmetric linear operator: out = M * in (both length n).
using MatVec = std::function<void(const double* in, double* out)>;

struct EigenPairs {
  std::vector<double> values;   ///< size K, by |value| descending (ties: value descending)
  std::vector<double> vectors;  ///< row-major n x K, column k pairs with values[k]
};

/// Top-K eigenpairs of a symmetric operator by magnitude. Small operators
/// (n <= 64) are materialized and diagonalized exactly, which keeps exact
/// small-graph multiplicities honest; larger ones use Lanczos with full
/// reorthogonalization and a deterministic pseudorandom start vector (a
/// generic start, so no eigendirection is structurally missed). On breakdown
/// the basis is extended with a fresh deterministic direction. Results are
/// reproducible; each returned vector has its largest-magnitude entry made
/// positive. max_iter <= 0 picks a cap from K and n; when the basis reaches
/// n the decomposition is exact. Throws NumericError if the residual
/// tolerance is not met within the cap.
EigenPairs top_eigenpairs(int n, int K, const MatVec& apply, int max_iter = 0,
                          double tol = 1e-8);

}  // namespace divcom
