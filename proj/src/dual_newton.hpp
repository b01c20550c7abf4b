#pragma once

// Damped Newton minimization of the convex Lagrange dual
//   G(alpha) = ln Z(alpha) - sum_j alpha_j target_j
// shared by the classical and quantum updaters. The gradient of G is the
// constraint residual vector, so convergence is measured on it directly.

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace maxent::detail {

struct DualPoint {
  double value = 0.0;        // G(alpha)
  Eigen::VectorXd gradient;  // E_alpha[A] - target
};

struct DualProblem {
  std::function<DualPoint(const Eigen::VectorXd&)> evaluate;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const DualPoint&)> hessian;
};

struct DualOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// ||alpha||_inf beyond this is taken as evidence that no interior
  /// solution exists.
  double divergence_bound = 1e3;
  /// Hessian condition numbers above this switch to the truncated
  /// (Levenberg-shifted) step.
  double max_condition = 1e12;
};

struct DualResult {
  Eigen::VectorXd alpha;
  DualPoint at;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Throws InfeasibleError when the multipliers diverge.
DualResult minimize_dual(const DualProblem& problem, Eigen::VectorXd alpha0,
                         const DualOptions& options);

/// Symmetric central differences of the gradient, step h = rel_step*(||alpha||+1).
Eigen::MatrixXd finite_difference_hessian(const DualProblem& problem,
                                          const Eigen::VectorXd& alpha, double rel_step = 1e-5);

}  // namespace maxent::detail
