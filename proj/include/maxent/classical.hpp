#pragma once

// Relative-entropy updating of finite discrete distributions under linear
// expectation constraints.

#include <span>
#include <vector>

#include "maxent/solver_report.hpp"

namespace maxent {

/// Which form of the relative entropy to evaluate. `full` keeps the
/// +sum(rho) term whose stationary point without constraints is the prior
/// itself; `normalized` drops it (the two differ by a constant once
/// normalization is imposed). `umegaki` names the normalized quantum form.
enum class EntropyForm { full, normalized, umegaki = normalized };

/// Nonnegative weight vector over n states.
class ClassicalDistribution {
 public:
  static constexpr double kNormalizationTol = 1e-12;

  ClassicalDistribution() = default;
  /// Throws DomainError on negative or non-finite weights, and when
  /// `normalized` is claimed but |sum - 1| > kNormalizationTol.
  explicit ClassicalDistribution(std::vector<double> weights, bool normalized = false);

  /// Divides by the total weight; throws DomainError if it is not positive.
  static ClassicalDistribution normalize(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::size_t size() const noexcept { return weights_.size(); }
  bool normalized() const noexcept { return normalized_; }
  double total() const noexcept;

 private:
  std::vector<double> weights_;
  bool normalized_ = false;
};

/// Expectation constraint sum_i rho_i * values[i] = target.
struct ClassicalConstraint {
  std::vector<double> values;
  double target = 0.0;
};

using ClassicalReport = SolverReport<ClassicalDistribution>;

/// S(rho, phi) with |A| = 1 and C[phi] = 0:
///   full:       -sum_i (rho_i ln(rho_i/phi_i) - rho_i)
///   normalized: -sum_i  rho_i ln(rho_i/phi_i)
/// Terms with rho_i = 0 vanish. Throws SupportViolation when rho_i > 0 = phi_i.
double relative_entropy(const ClassicalDistribution& rho, const ClassicalDistribution& phi,
                        EntropyForm form = EntropyForm::normalized);

/// Canonical posterior phi_i exp(sum_j alpha_j A_j(i)) / Z together with ln Z.
struct ClassicalPosterior {
  ClassicalDistribution posterior;
  double log_partition = 0.0;
};
ClassicalPosterior classical_posterior(const ClassicalDistribution& prior,
                                       std::span<const ClassicalConstraint> constraints,
                                       std::span<const double> alphas);

/// ln Z(alpha) = ln sum_i phi_i exp(sum_j alpha_j A_j(i)).
double classical_log_partition(const ClassicalDistribution& prior,
                               std::span<const ClassicalConstraint> constraints,
                               std::span<const double> alphas);

/// Maximizes the relative entropy to `prior` subject to normalization and
/// every constraint. Requires a strictly positive prior (DomainError) and
/// each target strictly between the smallest and largest value of its
/// observable (InfeasibleError). Targets that are individually but not
/// jointly achievable surface as InfeasibleError once the multipliers
/// diverge. A run that exhausts max_iter returns converged = false.
ClassicalReport solve_classical(const ClassicalDistribution& prior,
                                std::span<const ClassicalConstraint> constraints,
                                const SolverOptions& options = {});

}  // namespace maxent
