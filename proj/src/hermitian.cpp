#include "maxent/hermitian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxent/error.hpp"
#include "maxent/kernels.hpp"

namespace maxent {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    std::ostringstream msg;
    msg << "matrix of dim " << dim_ << " needs " << dim_ * dim_ << " entries, got "
        << entries_.size();
    throw ShapeError(msg.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cplx ComplexMatrix::trace() const noexcept {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ShapeError(msg.str());
  }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  kernels::active().caxpy(1.0, other.entries_.data(), entries_.data(), entries_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  kernels::active().caxpy(-1.0, other.entries_.data(), entries_.data(), entries_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) noexcept {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  const auto& k = kernels::active();
  ComplexMatrix c(n);
  const cplx* bp = b.entries().data();
  cplx* cp = c.entries().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const cplx a_il = a(i, l);
      if (a_il != cplx(0.0)) k.caxpy(a_il, bp + l * n, cp + i * n, n);
    }
  }
  return c;
}

double max_norm(const ComplexMatrix& a) noexcept {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

// ---------------------------------------------------------------------------
// HermitianOperator

namespace {

ComplexMatrix symmetrize(ComplexMatrix m) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx upper = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = upper;
      m(j, i) = std::conj(upper);
    }
  }
  return m;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m, double hermiticity_tol)
    : tol_(hermiticity_tol) {
  if (!(hermiticity_tol >= 0.0)) throw DomainError("hermiticity tolerance must be >= 0");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  if (worst > hermiticity_tol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max|M - M^dagger| = " << worst << " > " << hermiticity_tol;
    throw DomainError(msg.str(), worst);
  }
  matrix_ = symmetrize(std::move(m));
}

HermitianOperator::HermitianOperator(Trusted, ComplexMatrix m, double tol)
    : matrix_(symmetrize(std::move(m))), tol_(tol) {}

HermitianOperator HermitianOperator::symmetrized(ComplexMatrix m) {
  return HermitianOperator(Trusted{}, std::move(m), kDefaultHermiticityTol);
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(Trusted{}, ComplexMatrix::identity(dim), kDefaultHermiticityTol);
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  return HermitianOperator(Trusted{}, ComplexMatrix::diagonal(values), kDefaultHermiticityTol);
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  matrix_ += other.matrix_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  matrix_ -= other.matrix_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double scale) noexcept {
  matrix_ *= scale;
  return *this;
}

// ---------------------------------------------------------------------------
// Spectral calculus

HermitianOperator SpectralDecomposition::apply(const std::function<double(double)>& f) const {
  const std::size_t n = unitary.dim();
  // V = U diag(f(lambda)), then out_ij = sum_k V_ik conj(U_jk). Only the upper
  // triangle is computed; the lower one is its mirror.
  ComplexMatrix scaled = unitary;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = f(eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= w;
  }
  const auto& kern = kernels::active();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* vi = scaled.entries().data() + i * n;
    out(i, i) = kern.dotc(vi, unitary.entries().data() + i * n, n).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = kern.dotc(vi, unitary.entries().data() + j * n, n);
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return HermitianOperator::symmetrized(std::move(out));
}

HermitianOperator SpectralDecomposition::reconstruct() const {
  return apply([](double x) { return x; });
}

SpectralDecomposition eigh(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h.matrix()(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    // Eigen's tridiagonal QR allows 30 sweeps per eigenvalue.
    const int iterations = 30 * static_cast<int>(n);
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge (dim " << n << ", " << iterations
        << " iterations)";
    throw SolverFailure(msg.str(), n, iterations);
  }

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.unitary = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i)
      out.unitary(i, k) =
          solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  return out;
}

HermitianOperator matrix_function(const HermitianOperator& h,
                                  const std::function<double(double)>& f,
                                  std::optional<double> domain_guard) {
  const SpectralDecomposition spec = eigh(h);
  if (domain_guard) {
    // Ascending order: the first eigenvalue is the smallest.
    if (!spec.eigenvalues.empty() && !(spec.eigenvalues.front() > *domain_guard)) {
      std::ostringstream msg;
      msg << "eigenvalue " << spec.eigenvalues.front() << " is not above the domain bound "
          << *domain_guard;
      throw DomainError(msg.str(), spec.eigenvalues.front());
    }
  }
  return spec.apply(f);
}

HermitianOperator matrix_exp(const HermitianOperator& h) {
  return matrix_function(h, [](double x) { return std::exp(x); });
}

HermitianOperator matrix_log(const HermitianOperator& h, double domain_guard) {
  return matrix_function(h, [](double x) { return std::log(x); }, domain_guard);
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::symmetrized(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& c, std::pair<std::size_t, std::size_t> dims,
                            Subsystem keep) {
  const auto [d1, d2] = dims;
  if (d1 == 0 || d2 == 0 || c.dim() != d1 * d2) {
    std::ostringstream msg;
    msg << "partial_trace: operator dim " << c.dim() << " does not factor as " << d1 << " x "
        << d2;
    throw ShapeError(msg.str());
  }
  if (keep == Subsystem::first) {
    ComplexMatrix out(d1);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < d2; ++k) s += c(i * d2 + k, j * d2 + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(d2);
  for (std::size_t k = 0; k < d2; ++k)
    for (std::size_t l = 0; l < d2; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d1; ++i) s += c(i * d2 + k, i * d2 + l);
      out(k, l) = s;
    }
  return out;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_product");
  // Tr(AB) = sum_ik A_ik B_ki = <A, B^T> without conjugation.
  const ComplexMatrix bt = b.transpose();
  return kernels::active().dotu(a.entries().data(), bt.entries().data(), a.entries().size());
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.matrix(), b.matrix(), "trace_product");
  // For Hermitian B, B^T = conj(B), so Tr(AB) = sum_ik A_ik conj(B_ik).
  const auto n2 = a.matrix().entries().size();
  const cplx t =
      kernels::active().dotc(a.matrix().entries().data(), b.matrix().entries().data(), n2);
  double fa = 0.0;
  double fb = 0.0;
  for (std::size_t k = 0; k < n2; ++k) {
    fa += std::norm(a.matrix().entries()[k]);
    fb += std::norm(b.matrix().entries()[k]);
  }
  const double scale = std::max(1.0, std::sqrt(fa * fb));
  if (std::abs(t.imag()) > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "trace_product: Tr(AB) of Hermitian operands has imaginary part " << t.imag();
    throw Error(msg.str());
  }
  return t.real();
}

HermitianOperator pauli_x() {
  return HermitianOperator(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
}

HermitianOperator pauli_y() {
  return HermitianOperator(ComplexMatrix(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}));
}

HermitianOperator pauli_z() {
  return HermitianOperator(ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}));
}

}  // namespace maxent
