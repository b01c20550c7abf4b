#pragma once

// Dense complex Hermitian linear algebra at desk scale (dim <= 64):
// eigendecomposition, spectral matrix functions, tensor products, partial
// traces and trace pairings.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace maxent {

using cplx = std::complex<double>;

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// dim x dim zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  /// Throws ShapeError unless entries.size() == dim * dim.
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  cplx operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }
  cplx& operator()(std::size_t row, std::size_t col) noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }
  std::span<const cplx> row(std::size_t r) const noexcept {
    return std::span<const cplx>(entries_).subspan(r * dim_, dim_);
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> entries_;
};

/// Matrix product A*B.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij|
double max_norm(const ComplexMatrix& a) noexcept;
/// max_ij |a_ij - b_ij|; throws ShapeError on mismatched dims.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Complex matrix that is Hermitian within a tolerance at construction and
/// exactly Hermitian (symmetrized) afterwards.
class HermitianOperator {
 public:
  static constexpr double kDefaultHermiticityTol = 1e-12;

  /// 0 x 0 operator.
  HermitianOperator() = default;
  /// Throws DomainError when max|M - M^dagger| exceeds `hermiticity_tol`.
  explicit HermitianOperator(ComplexMatrix m,
                             double hermiticity_tol = kDefaultHermiticityTol);

  /// Symmetrizes without checking. For results of computations that are
  /// Hermitian up to rounding (spectral reconstructions, sums of Hermitians).
  static HermitianOperator symmetrized(ComplexMatrix m);

  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator diagonal(std::span<const double> values);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  double hermiticity_tol() const noexcept { return tol_; }
  /// Tr H, real for Hermitian H.
  double trace() const noexcept { return matrix_.trace().real(); }

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double scale) noexcept;

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

 private:
  struct Trusted {};
  HermitianOperator(Trusted, ComplexMatrix m, double tol);

  ComplexMatrix matrix_;
  double tol_ = kDefaultHermiticityTol;
};

/// Eigenvalues ascending; eigenvectors are the columns of `unitary`.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix unitary;

  /// U diag(f(lambda)) U^dagger, symmetrized.
  HermitianOperator apply(const std::function<double(double)>& f) const;
  /// U diag(lambda) U^dagger.
  HermitianOperator reconstruct() const;
};

/// Hermitian eigendecomposition. Throws SolverFailure if the eigen routine
/// does not converge.
SpectralDecomposition eigh(const HermitianOperator& h);

/// f(H) through the spectral decomposition. When `domain_guard` is set, every
/// eigenvalue must exceed it or a DomainError carrying the offending
/// eigenvalue is thrown.
HermitianOperator matrix_function(const HermitianOperator& h,
                                  const std::function<double(double)>& f,
                                  std::optional<double> domain_guard = std::nullopt);

HermitianOperator matrix_exp(const HermitianOperator& h);
/// Natural log; requires every eigenvalue > domain_guard.
HermitianOperator matrix_log(const HermitianOperator& h, double domain_guard = 0.0);

/// Kronecker product: entry (i*dB + k, j*dB + l) = A_ij * B_kl.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

enum class Subsystem { first = 1, second = 2 };

/// Traces out the factor not named by `keep` from an operator on a
/// dims.first x dims.second product space.
ComplexMatrix partial_trace(const ComplexMatrix& c,
                            std::pair<std::size_t, std::size_t> dims, Subsystem keep);

/// Tr(A B) for general square matrices.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// Re Tr(A B); the imaginary part of a product of Hermitians vanishes up to
/// rounding and is checked against 1e-10 (scaled by the operand norms).
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Pauli matrices.
HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

}  // namespace maxent
