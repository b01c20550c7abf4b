#include "maxent/kernels.hpp"

namespace maxent::kernels {
namespace {

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = {y[k].real() + (ar * xr - ai * xi), y[k].imag() + (ar * xi + ai * xr)};
  }
}

// Written out on real/imag parts: std::complex operator* carries NaN/inf
// recovery branches that we never want in an inner loop.
cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() - x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() + x[k].imag() * y[k].real();
  }
  return {re, im};
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].imag() * y[k].real() - x[k].real() * y[k].imag();
  }
  return {re, im};
}

constexpr KernelTable kScalarTable{"scalar", caxpy_scalar, dotu_scalar, dotc_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalarTable; }

}  // namespace maxent::kernels
