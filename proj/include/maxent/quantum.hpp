#pragma once

// Quantum relative-entropy updating of density matrices under Hermitian
// expectation constraints. Posteriors take the form
//   rho(alpha) = exp(sum_i alpha_i A_i + ln phi) / Z,   Z = Tr exp(...),
// and d ln Z / d alpha_i = Tr(rho(alpha) A_i).

#include <span>
#include <vector>

#include "maxent/classical.hpp"
#include "maxent/hermitian.hpp"
#include "maxent/solver_report.hpp"

namespace maxent {

/// Priors whose smallest eigenvalue is below this are treated as rank
/// deficient; ln phi is undefined there.
inline constexpr double kMinPriorEigenvalue = 1e-12;

/// Positive-semidefinite Hermitian operator. The spectrum is computed once at
/// construction and kept.
class DensityMatrix {
 public:
  static constexpr double kDefaultTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-12;

  DensityMatrix() = default;
  /// Throws DomainError when an eigenvalue is below -kPsdTol, or when
  /// `normalized` is claimed and |Tr - 1| > trace_tol.
  explicit DensityMatrix(HermitianOperator op, bool normalized = true,
                         double trace_tol = kDefaultTraceTol);

  /// op / Tr(op); throws DomainError if op is not PSD or has zero trace.
  static DensityMatrix normalize(const HermitianOperator& op);
  /// Builds from a known spectrum without re-diagonalizing.
  static DensityMatrix from_spectrum(SpectralDecomposition spectrum, bool normalized = true,
                                     double trace_tol = kDefaultTraceTol);

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  std::size_t dim() const noexcept { return op_.dim(); }
  bool normalized() const noexcept { return normalized_; }
  double trace_tol() const noexcept { return trace_tol_; }
  double trace() const noexcept { return op_.trace(); }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  std::span<const double> eigenvalues() const noexcept { return spectrum_.eigenvalues; }

 private:
  void validate();

  HermitianOperator op_;
  SpectralDecomposition spectrum_;
  bool normalized_ = true;
  double trace_tol_ = kDefaultTraceTol;
};

struct QuantumConstraint {
  HermitianOperator observable;
  double target = 0.0;
};

using QuantumReport = SolverReport<DensityMatrix>;

/// umegaki: -Tr(rho ln rho - rho ln phi); full adds +Tr(rho).
/// Zero eigenvalues of rho contribute nothing (0 ln 0 = 0). Throws
/// DomainError when phi is rank deficient, ShapeError on mismatched dims.
double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& phi,
                                EntropyForm form = EntropyForm::umegaki);

/// Tr(rho A).
double expectation(const DensityMatrix& rho, const HermitianOperator& observable);

struct QuantumPosterior {
  DensityMatrix posterior;
  double log_partition = 0.0;
  /// Tr exp(C); may overflow to inf where log_partition does not.
  double partition_value = 1.0;
};

/// exp(C)/Z with C = sum_i alpha_i A_i + ln phi and Z = Tr exp(C).
QuantumPosterior posterior_from_multipliers(const DensityMatrix& phi,
                                            std::span<const HermitianOperator> observables,
                                            std::span<const double> alphas);

/// ln Tr exp(sum_i alpha_i A_i + ln phi).
double log_partition(const DensityMatrix& phi, std::span<const HermitianOperator> observables,
                     std::span<const double> alphas);

/// Maximizes the quantum relative entropy to a full-rank normalized prior
/// subject to every constraint. Each target must lie strictly between the
/// extreme eigenvalues of its observable (InfeasibleError otherwise); jointly
/// unachievable targets surface as InfeasibleError when |alpha|_inf > 1e3.
QuantumReport solve_quantum(const DensityMatrix& prior,
                            std::span<const QuantumConstraint> constraints,
                            const SolverOptions& options = {});

}  // namespace maxent
