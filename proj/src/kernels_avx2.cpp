#include "kernels_internal.hpp"

#if defined(MAXENT_HAVE_AVX2)

#include <immintrin.h>

#define MAXENT_AVX2_TARGET __attribute__((target("avx2,fma")))

namespace maxent::kernels::detail {
namespace {

static_assert(sizeof(cplx) == 2 * sizeof(double));

// Two complex values per 256-bit register: [re0, im0, re1, im1].

MAXENT_AVX2_TARGET inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

MAXENT_AVX2_TARGET void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [im, re, im, re]
    // addsub: even lanes subtract, odd lanes add.
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    double* yp = reinterpret_cast<double*>(y + k);
    _mm256_storeu_pd(yp, _mm256_add_pd(_mm256_loadu_pd(yp), prod));
  }
  for (; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = {y[k].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[k].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

// Accumulates straight products (xr*yr, xi*yi) and crossed products
// (xr*yi, xi*yr) separately; the sign pattern is applied after the reduction.
MAXENT_AVX2_TARGET void dot_parts(const cplx* x, const cplx* y, std::size_t n,
                                  double& rr, double& ii, double& ri, double& ir) {
  __m256d straight = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d yv = load2(y + k);
    straight = _mm256_fmadd_pd(xv, yv, straight);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), crossed);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, straight);
  _mm256_store_pd(c, crossed);
  rr = s[0] + s[2];
  ii = s[1] + s[3];
  ri = c[0] + c[2];
  ir = c[1] + c[3];
  for (; k < n; ++k) {
    rr += x[k].real() * y[k].real();
    ii += x[k].imag() * y[k].imag();
    ri += x[k].real() * y[k].imag();
    ir += x[k].imag() * y[k].real();
  }
}

MAXENT_AVX2_TARGET cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  double rr, ii, ri, ir;
  dot_parts(x, y, n, rr, ii, ri, ir);
  return {rr - ii, ri + ir};
}

MAXENT_AVX2_TARGET cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  double rr, ii, ri, ir;
  dot_parts(x, y, n, rr, ii, ri, ir);
  return {rr + ii, ir - ri};
}

}  // namespace

const KernelTable kAvx2Table{"avx2", caxpy_avx2, dotu_avx2, dotc_avx2};

}  // namespace maxent::kernels::detail

#endif  // MAXENT_HAVE_AVX2
