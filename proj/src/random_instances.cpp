#include "maxent/random_instances.hpp"

#include <cmath>

namespace maxent {

double InstanceGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double InstanceGenerator::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

HermitianOperator InstanceGenerator::hermitian(std::size_t dim, double scale) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = scale * normal();
    for (std::size_t j = i + 1; j < dim; ++j) {
      const cplx z(scale * normal(), scale * normal());
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator InstanceGenerator::diagonal_hermitian(std::size_t dim, double scale) {
  return HermitianOperator::diagonal(vector(dim, scale));
}

DensityMatrix InstanceGenerator::density(std::size_t dim, double scale) {
  return DensityMatrix::normalize(matrix_exp(hermitian(dim, scale)));
}

ClassicalDistribution InstanceGenerator::distribution(std::size_t n, double scale) {
  std::vector<double> w(n);
  for (double& x : w) x = std::exp(scale * normal());
  return ClassicalDistribution::normalize(std::move(w));
}

std::vector<double> InstanceGenerator::vector(std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * normal();
  return v;
}

std::size_t InstanceGenerator::index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

SpinProblem InstanceGenerator::spin_problem(double alpha_range) {
  SpinProblem p;
  p.a = uniform(0.1, 0.9);
  p.b = 1.0 - p.a;
  for (double& c : p.c) c = uniform(-1.0, 1.0);
  p.target = spin_constraint_value(p, uniform(-alpha_range, alpha_range));
  return p;
}

}  // namespace maxent
