#pragma once

// Closed-form updating of a spin-1/2 prior diag(a, b) (spin-z basis) under one
// expectation constraint Tr(rho c_mu sigma^mu) = target, with
// c_mu sigma^mu = c1*1 + cx*sigma_x + cy*sigma_y + cz*sigma_z.
//
// With C = alpha c_mu sigma^mu + ln phi the eigenvalues of C are
// lambda +- dlambda, where
//   lambda  = alpha c1 + ln(ab)/2
//   dlambda = sqrt((2 alpha cz + ln(a/b))^2 + 4 alpha^2 (cx^2 + cy^2)) / 2,
// Z = 2 e^lambda cosh(dlambda), and the constraint value
//   F(alpha) = c1 + tanh(dlambda)/(2 dlambda) (2 alpha |c|^2 + cz ln(a/b))
// is monotone in alpha. Nothing here calls the general eigensolver, so these
// routines serve as an independent check of the quantum updater.

#include <array>

#include "maxent/quantum.hpp"

namespace maxent {

struct SpinProblem {
  double a = 0.5;
  double b = 0.5;
  /// Pauli coefficients {c1, cx, cy, cz}.
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
  double target = 0.0;

  /// Throws DomainError unless a > 0 and b > 0 and every field is finite.
  void validate() const;
};

struct SpinEigenvalues {
  double plus = 0.0;
  double minus = 0.0;
  double center = 0.0;    // lambda
  double half_gap = 0.0;  // dlambda >= 0
};

SpinEigenvalues spin_eigenvalues(const SpinProblem& p, double alpha);

/// Z = 2 e^lambda cosh(dlambda).
double spin_partition(const SpinProblem& p, double alpha);
/// ln Z, finite where Z itself overflows.
double spin_log_partition(const SpinProblem& p, double alpha);

/// F(alpha); the removable singularity at dlambda = 0 is evaluated through
/// the series of tanh(x)/x.
double spin_constraint_value(const SpinProblem& p, double alpha);

/// c_mu sigma^mu as a 2x2 operator.
HermitianOperator spin_observable(const SpinProblem& p);
/// diag(a, b) normalized.
DensityMatrix spin_prior(const SpinProblem& p);

/// exp(C)/Z = (1 + tanh(dlambda)/dlambda * v.sigma) / 2 with
/// v = (alpha cx, alpha cy, alpha cz + ln(a/b)/2).
DensityMatrix spin_posterior(const SpinProblem& p, double alpha);

using SpinReport = SolverReport<DensityMatrix>;

inline constexpr double kDefaultSpinTol = 1e-12;

/// Solves F(alpha) = target by geometric bracket expansion and bisection.
/// Throws InfeasibleError when the target is outside the open range
/// (c1 - |c|, c1 + |c|) of F, or when the observable is a multiple of the
/// identity and c1 differs from the target by more than tol (for a match
/// alpha = 0 is returned).
SpinReport solve_spin(const SpinProblem& p, double tol = kDefaultSpinTol);

}  // namespace maxent
