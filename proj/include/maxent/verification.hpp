#pragma once

// Executable design-criteria checks. Each check runs the solvers on the given
// inputs and reports the largest deviation from the behavior the criterion
// demands; run_suite drives all of them over seeded random instances.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxent/classical.hpp"
#include "maxent/quantum.hpp"

namespace maxent::verification {

struct PropertyResult {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

/// passed is set to (max_deviation <= threshold); NaN never passes.
PropertyResult make_result(std::string name, double max_deviation, double threshold,
                           std::string detail = {});

inline constexpr double kPriorRecoveryThreshold = 1e-10;
inline constexpr double kSubsystemThreshold = 1e-8;
inline constexpr double kCommutingThreshold = 1e-9;
inline constexpr double kZeroMultiplierThreshold = 1e-8;
inline constexpr double kLogAdditivityThreshold = 1e-9;
inline constexpr double kSubdomainThreshold = 1e-10;

/// Unconstrained update must return the (normalized) prior.
PropertyResult check_prior_recovery(const ClassicalDistribution& prior,
                                    double threshold = kPriorRecoveryThreshold);
PropertyResult check_prior_recovery(const DensityMatrix& prior,
                                    double threshold = kPriorRecoveryThreshold);

/// Joint update of prior1 (x) prior2 under A (x) 1 and 1 (x) B constraints
/// versus the product of the separate updates.
PropertyResult check_subsystem_independence(const DensityMatrix& prior1,
                                            const DensityMatrix& prior2,
                                            const std::vector<QuantumConstraint>& cons1,
                                            const std::vector<QuantumConstraint>& cons2,
                                            double threshold = kSubsystemThreshold);

/// Classical solve on vectors versus quantum solve on the matching diagonal
/// operators: posteriors and both entropy forms.
PropertyResult check_commuting_reduction(const std::vector<double>& diag_prior,
                                         const std::vector<std::vector<double>>& diag_observables,
                                         const std::vector<double>& targets,
                                         double threshold = kCommutingThreshold);

/// A constraint already satisfied by the prior must get a zero multiplier.
PropertyResult check_zero_multiplier(const ClassicalDistribution& prior,
                                     const ClassicalConstraint& constraint,
                                     double threshold = kZeroMultiplierThreshold);
PropertyResult check_zero_multiplier(const DensityMatrix& prior,
                                     const QuantumConstraint& constraint,
                                     double threshold = kZeroMultiplierThreshold);

/// With phi(rho, prior) = -(ln rho - ln prior):
///   phi(rho1 (x) rho2, phi1 (x) phi2) == phi(rho1, phi1) (x) 1 + 1 (x) phi(rho2, phi2).
PropertyResult check_log_tensor_additivity(const DensityMatrix& rho1, const DensityMatrix& phi1,
                                           const DensityMatrix& rho2, const DensityMatrix& phi2,
                                           double threshold = kLogAdditivityThreshold);

/// Solves with `local_constraint` (zero outside the domain) plus the domain
/// probability constraint rho(D) = domain_mass (default: the prior mass of
/// D), then compares conditionals on the complement with the prior's.
PropertyResult check_subdomain_independence(const ClassicalDistribution& prior,
                                            const std::vector<bool>& domain_mask,
                                            const ClassicalConstraint& local_constraint,
                                            std::optional<double> domain_mass = std::nullopt,
                                            double threshold = kSubdomainThreshold);

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Runs all six checks on `trials` random instances each; one aggregated
/// result per check, deviation = worst trial. Deterministic in (seed, trials).
std::vector<PropertyResult> run_suite(std::uint64_t seed = kDefaultSeed, int trials = 1);

/// op (x) 1 for Subsystem::first, 1 (x) op for second; `other_dim` is the
/// dimension of the identity factor.
HermitianOperator embed(const HermitianOperator& op, Subsystem factor, std::size_t other_dim);

}  // namespace maxent::verification
