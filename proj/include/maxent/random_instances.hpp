#pragma once

// Seeded generators for the randomized property checks.

#include <cstdint>
#include <random>
#include <vector>

#include "maxent/classical.hpp"
#include "maxent/quantum.hpp"
#include "maxent/spin.hpp"

namespace maxent {

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double normal();

  /// Entries drawn N(0, scale^2) (real and imaginary parts), symmetrized.
  HermitianOperator hermitian(std::size_t dim, double scale = 1.0);
  /// Real diagonal operator with N(0, scale^2) entries.
  HermitianOperator diagonal_hermitian(std::size_t dim, double scale = 1.0);
  /// exp(H)/Tr exp(H) for a random Hermitian H; always full rank.
  DensityMatrix density(std::size_t dim, double scale = 1.0);
  /// Strictly positive normalized weights, log-weights N(0, scale^2).
  ClassicalDistribution distribution(std::size_t n, double scale = 1.0);
  std::vector<double> vector(std::size_t n, double scale = 1.0);
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive

  /// Random spin problem whose target is F(alpha0) for a hidden
  /// alpha0 in [-alpha_range, alpha_range].
  SpinProblem spin_problem(double alpha_range = 2.0);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace maxent
