#include "maxent/spin.hpp"

#include <cmath>
#include <sstream>

#include "maxent/error.hpp"

namespace maxent {
namespace {

// tanh(x)/x, continuous through x = 0.
double tanh_over_x(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 3.0;
  return std::tanh(x) / x;
}

// ln(2 cosh x) without overflow.
double log_two_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

double bloch_norm(const SpinProblem& p) {
  return std::sqrt(p.c[1] * p.c[1] + p.c[2] * p.c[2] + p.c[3] * p.c[3]);
}

}  // namespace

void SpinProblem::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "spin prior weights must be positive and finite (a = " << a << ", b = " << b << ")";
    throw DomainError(msg.str(), a > 0.0 ? b : a);
  }
  for (double x : c)
    if (!std::isfinite(x)) throw DomainError("spin observable coefficients must be finite", x);
  if (!std::isfinite(target)) throw DomainError("spin target must be finite", target);
}

SpinEigenvalues spin_eigenvalues(const SpinProblem& p, double alpha) {
  p.validate();
  const double log_ratio = std::log(p.a / p.b);
  const double z_part = 2.0 * alpha * p.c[3] + log_ratio;
  const double xy = p.c[1] * p.c[1] + p.c[2] * p.c[2];
  SpinEigenvalues e;
  e.center = alpha * p.c[0] + 0.5 * std::log(p.a * p.b);
  e.half_gap = 0.5 * std::sqrt(z_part * z_part + 4.0 * alpha * alpha * xy);
  e.plus = e.center + e.half_gap;
  e.minus = e.center - e.half_gap;
  return e;
}

double spin_partition(const SpinProblem& p, double alpha) {
  const SpinEigenvalues e = spin_eigenvalues(p, alpha);
  return 2.0 * std::exp(e.center) * std::cosh(e.half_gap);
}

double spin_log_partition(const SpinProblem& p, double alpha) {
  const SpinEigenvalues e = spin_eigenvalues(p, alpha);
  return e.center + log_two_cosh(e.half_gap);
}

double spin_constraint_value(const SpinProblem& p, double alpha) {
  const SpinEigenvalues e = spin_eigenvalues(p, alpha);
  const double norm2 = p.c[1] * p.c[1] + p.c[2] * p.c[2] + p.c[3] * p.c[3];
  const double slope = 2.0 * alpha * norm2 + p.c[3] * std::log(p.a / p.b);
  return p.c[0] + 0.5 * tanh_over_x(e.half_gap) * slope;
}

HermitianOperator spin_observable(const SpinProblem& p) {
  const auto [c1, cx, cy, cz] = p.c;
  return HermitianOperator(ComplexMatrix(2, {cplx(c1 + cz), cplx(cx, -cy), cplx(cx, cy),
                                             cplx(c1 - cz)}));
}

DensityMatrix spin_prior(const SpinProblem& p) {
  p.validate();
  const double total = p.a + p.b;
  const double w[2] = {p.a / total, p.b / total};
  return DensityMatrix(HermitianOperator::diagonal(w));
}

DensityMatrix spin_posterior(const SpinProblem& p, double alpha) {
  const SpinEigenvalues e = spin_eigenvalues(p, alpha);
  const double vx = alpha * p.c[1];
  const double vy = alpha * p.c[2];
  const double vz = alpha * p.c[3] + 0.5 * std::log(p.a / p.b);
  const double k = 0.5 * tanh_over_x(e.half_gap);
  return DensityMatrix(HermitianOperator(ComplexMatrix(
      2, {cplx(0.5 + k * vz), cplx(k * vx, -k * vy), cplx(k * vx, k * vy), cplx(0.5 - k * vz)})));
}

SpinReport solve_spin(const SpinProblem& p, double tol) {
  p.validate();
  SpinReport report;
  const double norm = bloch_norm(p);

  auto finish = [&](double alpha, int iterations) {
    report.multipliers = {alpha};
    report.log_partition = spin_log_partition(p, alpha);
    report.partition_value = std::exp(report.log_partition);
    report.posterior = spin_posterior(p, alpha);
    report.residuals = {spin_constraint_value(p, alpha) - p.target};
    report.iterations = iterations;
    report.converged = std::abs(report.residuals[0]) <= tol;
    return report;
  };

  if (norm == 0.0) {
    if (std::abs(p.c[0] - p.target) <= tol) return finish(0.0, 0);
    std::ostringstream msg;
    msg.precision(17);
    msg << "observable is " << p.c[0] << " times the identity; target " << p.target
        << " is unreachable";
    throw InfeasibleError(msg.str());
  }

  const double lo_limit = p.c[0] - norm;
  const double hi_limit = p.c[0] + norm;
  if (!(p.target > lo_limit && p.target < hi_limit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target " << p.target << " is outside the open range (" << lo_limit << ", "
        << hi_limit << ") of the constraint function";
    throw InfeasibleError(msg.str());
  }

  // F is monotone; orient it so that g is nondecreasing.
  const double orientation =
      spin_constraint_value(p, 1.0) >= spin_constraint_value(p, -1.0) ? 1.0 : -1.0;
  auto g = [&](double alpha) { return orientation * (spin_constraint_value(p, alpha) - p.target); };

  int iterations = 0;
  double lo = -1.0;
  double hi = 1.0;
  while (g(lo) > 0.0) {
    hi = lo;
    lo *= 2.0;
    if (++iterations > 2000 || !std::isfinite(lo))
      throw InfeasibleError("target is numerically indistinguishable from the lower limit of F");
  }
  while (g(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++iterations > 2000 || !std::isfinite(hi))
      throw InfeasibleError("target is numerically indistinguishable from the upper limit of F");
  }

  double mid = 0.5 * (lo + hi);
  while (true) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    const double r = g(mid);
    if (r == 0.0) break;
    (r < 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid)) && std::abs(r) <= tol) break;
  }
  // Of the final bracket ends and midpoint, keep the best residual.
  double best = mid;
  for (double x : {lo, hi})
    if (std::abs(g(x)) < std::abs(g(best))) best = x;
  return finish(best, iterations);
}

}  // namespace maxent
