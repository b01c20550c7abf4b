#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace maxent {

/// Default residual tolerance and iteration cap of the constraint solvers.
inline constexpr double kDefaultSolverTol = 1e-10;
inline constexpr int kDefaultMaxIter = 200;

struct SolverOptions {
  double tol = kDefaultSolverTol;
  int max_iter = kDefaultMaxIter;
  /// Starting multipliers; empty means all zero (the prior itself).
  std::vector<double> initial_multipliers;
};

/// Outcome of a constrained relative-entropy maximization.
///
/// `multipliers[j]` pairs with constraint j; the normalization multiplier is
/// absorbed into the partition value. `residuals[j]` is the posterior
/// expectation of observable j minus its target. `trace` holds max|residual|
/// at the start of every Newton iteration.
template <class Posterior>
struct SolverReport {
  std::vector<double> multipliers;
  double log_partition = 0.0;
  /// exp(log_partition); may overflow to inf for extreme multipliers.
  double partition_value = 1.0;
  Posterior posterior;
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;

  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
  }
};

}  // namespace maxent
