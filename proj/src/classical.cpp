#include "maxent/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "dual_newton.hpp"
#include "maxent/error.hpp"

namespace maxent {

ClassicalDistribution::ClassicalDistribution(std::vector<double> weights, bool normalized)
    : weights_(std::move(weights)), normalized_(normalized) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      std::ostringstream msg;
      msg << "weight " << i << " is " << weights_[i] << "; weights must be finite and >= 0";
      throw DomainError(msg.str(), weights_[i]);
    }
  }
  if (normalized_ && std::abs(total() - 1.0) > kNormalizationTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "distribution marked normalized sums to " << total();
    throw DomainError(msg.str(), total());
  }
}

ClassicalDistribution ClassicalDistribution::normalize(std::vector<double> weights) {
  const ClassicalDistribution raw(std::move(weights));
  const double sum = raw.total();
  if (!(sum > 0.0)) throw DomainError("cannot normalize a distribution with zero total weight");
  std::vector<double> w(raw.weights().begin(), raw.weights().end());
  for (double& x : w) x /= sum;
  ClassicalDistribution out;
  out.weights_ = std::move(w);
  out.normalized_ = true;
  return out;
}

double ClassicalDistribution::total() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double relative_entropy(const ClassicalDistribution& rho, const ClassicalDistribution& phi,
                        EntropyForm form) {
  if (rho.size() != phi.size()) {
    std::ostringstream msg;
    msg << "relative_entropy: support sizes differ (" << rho.size() << " vs " << phi.size() << ")";
    throw ShapeError(msg.str());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    if (r == 0.0) continue;
    if (phi[i] == 0.0) {
      std::ostringstream msg;
      msg << "relative_entropy: state " << i << " has posterior weight " << r
          << " but zero prior weight";
      throw SupportViolation(msg.str(), i);
    }
    s -= r * std::log(r / phi[i]);
    if (form == EntropyForm::full) s += r;
  }
  return s;
}

namespace {

void validate_shapes(const ClassicalDistribution& prior,
                     std::span<const ClassicalConstraint> constraints) {
  if (prior.size() == 0) throw ShapeError("prior has empty support");
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    if (constraints[j].values.size() != prior.size()) {
      std::ostringstream msg;
      msg << "constraint " << j << " has " << constraints[j].values.size()
          << " values for a support of size " << prior.size();
      throw ShapeError(msg.str());
    }
  }
}

// Exponent sums e_i = sum_j alpha_j A_j(i) and the shifted, prior-weighted
// terms w_i = phi_i exp(e_i - max e). At alpha = 0 this reduces to w = phi
// exactly, so an unconstrained update returns the normalized prior bit for bit.
struct CanonicalTerms {
  std::vector<double> weights;
  double shift = 0.0;
  double sum = 0.0;

  double log_partition() const { return shift + std::log(sum); }
};

CanonicalTerms canonical_terms(const ClassicalDistribution& prior,
                               std::span<const ClassicalConstraint> constraints,
                               std::span<const double> alphas) {
  const std::size_t n = prior.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < constraints.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) e[i] += alphas[j] * constraints[j].values[i];
  CanonicalTerms t;
  t.shift = *std::max_element(e.begin(), e.end());
  t.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.weights[i] = prior[i] * std::exp(e[i] - t.shift);
    t.sum += t.weights[i];
  }
  return t;
}

ClassicalDistribution to_distribution(const CanonicalTerms& t) {
  return ClassicalDistribution::normalize(t.weights);
}

void check_alpha_count(std::span<const ClassicalConstraint> constraints,
                       std::span<const double> alphas) {
  if (alphas.size() != constraints.size()) {
    std::ostringstream msg;
    msg << alphas.size() << " multipliers given for " << constraints.size() << " constraints";
    throw ShapeError(msg.str());
  }
}

}  // namespace

ClassicalPosterior classical_posterior(const ClassicalDistribution& prior,
                                       std::span<const ClassicalConstraint> constraints,
                                       std::span<const double> alphas) {
  validate_shapes(prior, constraints);
  check_alpha_count(constraints, alphas);
  const CanonicalTerms t = canonical_terms(prior, constraints, alphas);
  if (!(t.sum > 0.0)) throw DomainError("prior has zero total weight");
  return {to_distribution(t), t.log_partition()};
}

double classical_log_partition(const ClassicalDistribution& prior,
                               std::span<const ClassicalConstraint> constraints,
                               std::span<const double> alphas) {
  validate_shapes(prior, constraints);
  check_alpha_count(constraints, alphas);
  return canonical_terms(prior, constraints, alphas).log_partition();
}

namespace {

// One-dimensional fallback: E_alpha[A] is nondecreasing in alpha, so a
// bracket around the root always exists for a feasible target.
double bisect_single(const std::function<double(double)>& residual, double start, double tol,
                     int& iterations) {
  double lo = start;
  double hi = start;
  double step = 1.0;
  while (residual(lo) > 0.0) {
    lo -= step;
    step *= 2.0;
    if (lo < -1e3) throw InfeasibleError("multiplier bracket diverged below -1e3");
  }
  step = 1.0;
  while (residual(hi) < 0.0) {
    hi += step;
    step *= 2.0;
    if (hi > 1e3) throw InfeasibleError("multiplier bracket diverged above 1e3");
  }
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < 200; ++k) {
    ++iterations;
    mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) <= tol || mid == lo || mid == hi) break;
    (r < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace

ClassicalReport solve_classical(const ClassicalDistribution& prior,
                                std::span<const ClassicalConstraint> constraints,
                                const SolverOptions& options) {
  validate_shapes(prior, constraints);
  const std::size_t n = prior.size();
  const std::size_t m = constraints.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(prior[i] > 0.0)) {
      std::ostringstream msg;
      msg << "prior weight " << i << " is zero; the update needs a strictly positive prior";
      throw DomainError(msg.str(), prior[i]);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& c = constraints[j];
    const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
    if (!std::isfinite(c.target) || !(c.target > *lo && c.target < *hi)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "constraint " << j << " target " << c.target << " is not strictly inside ("
          << *lo << ", " << *hi << ")";
      throw InfeasibleError(msg.str());
    }
  }

  ClassicalReport report;
  if (m == 0) {
    std::vector<double> zero;
    const CanonicalTerms t = canonical_terms(prior, constraints, zero);
    report.posterior = prior.normalized() ? prior : to_distribution(t);
    report.log_partition = t.log_partition();
    report.partition_value = std::exp(report.log_partition);
    report.converged = true;
    report.trace = {0.0};
    return report;
  }

  Eigen::VectorXd targets(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) targets(static_cast<Eigen::Index>(j)) = constraints[j].target;

  // Probabilities are cached by evaluate() for the covariance Hessian.
  auto moments = [&](const Eigen::VectorXd& alpha, std::vector<double>& probs) {
    const CanonicalTerms t = canonical_terms(
        prior, constraints, std::span<const double>(alpha.data(), static_cast<std::size_t>(m)));
    probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) probs[i] = t.weights[i] / t.sum;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        mean(static_cast<Eigen::Index>(j)) += probs[i] * constraints[j].values[i];
    return std::pair{t.log_partition(), mean};
  };

  std::vector<double> probs;
  detail::DualProblem dual;
  dual.evaluate = [&](const Eigen::VectorXd& alpha) {
    auto [log_z, mean] = moments(alpha, probs);
    return detail::DualPoint{log_z - alpha.dot(targets), mean - targets};
  };
  dual.hessian = [&](const Eigen::VectorXd& alpha, const detail::DualPoint&) {
    auto [log_z, mean] = moments(alpha, probs);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                static_cast<Eigen::Index>(m));
    Eigen::VectorXd dev(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        dev(static_cast<Eigen::Index>(j)) = constraints[j].values[i] - mean(static_cast<Eigen::Index>(j));
      cov.noalias() += probs[i] * dev * dev.transpose();
    }
    return cov;
  };

  Eigen::VectorXd alpha0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  if (!options.initial_multipliers.empty()) {
    if (options.initial_multipliers.size() != m)
      throw ShapeError("initial_multipliers length does not match the constraint count");
    for (std::size_t j = 0; j < m; ++j)
      alpha0(static_cast<Eigen::Index>(j)) = options.initial_multipliers[j];
  }

  detail::DualOptions dopts;
  dopts.tol = options.tol;
  dopts.max_iter = options.max_iter;
  detail::DualResult res = detail::minimize_dual(dual, alpha0, dopts);

  if (!res.converged && m == 1) {
    int extra = 0;
    const double a = bisect_single(
        [&](double x) { return dual.evaluate(Eigen::VectorXd::Constant(1, x)).gradient(0); },
        res.alpha(0), options.tol, extra);
    res.alpha(0) = a;
    res.at = dual.evaluate(res.alpha);
    res.iterations += extra;
    res.trace.push_back(std::abs(res.at.gradient(0)));
    res.converged = std::abs(res.at.gradient(0)) <= options.tol;
  }

  report.multipliers.assign(res.alpha.data(), res.alpha.data() + m);
  const CanonicalTerms t = canonical_terms(prior, constraints, report.multipliers);
  report.posterior = to_distribution(t);
  report.log_partition = t.log_partition();
  report.partition_value = std::exp(report.log_partition);
  report.residuals.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += report.posterior[i] * constraints[j].values[i];
    report.residuals[j] = e - constraints[j].target;
  }
  report.iterations = res.iterations;
  report.trace = std::move(res.trace);
  report.converged = report.max_residual() <= options.tol;
  return report;
}

}  // namespace maxent
