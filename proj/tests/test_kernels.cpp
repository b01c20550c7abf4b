#include <random>
#include <vector>

#include "doctest.h"
#include "maxent/kernels.hpp"

using maxent::kernels::cplx;
using maxent::kernels::KernelTable;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

// Plain std::complex arithmetic, the reference for both tables.
cplx ref_dotu(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

cplx ref_dotc(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
  return s;
}

void check_table(const KernelTable& t) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    const double tol = 1e-13 * (1.0 + static_cast<double>(n));

    const cplx du = t.dotu(x.data(), y.data(), n);
    const cplx dc = t.dotc(x.data(), y.data(), n);
    CHECK(std::abs(du - ref_dotu(x, y)) <= tol);
    CHECK(std::abs(dc - ref_dotc(x, y)) <= tol);

    const cplx alpha{0.3, -1.7};
    auto z = y;
    t.caxpy(alpha, x.data(), z.data(), n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(z[k] - (y[k] + alpha * x[k])) <= 1e-14);
  }
}

}  // namespace

TEST_CASE("scalar kernels match std::complex reference") {
  check_table(maxent::kernels::scalar_table());
}

TEST_CASE("avx2 kernels match reference and scalar tables") {
  const KernelTable* avx = maxent::kernels::avx2_table();
  if (!avx) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; skipping");
    return;
  }
  check_table(*avx);

  const KernelTable& sc = maxent::kernels::scalar_table();
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 16u, 17u, 64u * 64u}) {
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    const double tol = 1e-12 * static_cast<double>(n);
    CHECK(std::abs(avx->dotu(x.data(), y.data(), n) - sc.dotu(x.data(), y.data(), n)) <= tol);
    CHECK(std::abs(avx->dotc(x.data(), y.data(), n) - sc.dotc(x.data(), y.data(), n)) <= tol);
    auto za = y, zs = y;
    avx->caxpy({-0.25, 2.0}, x.data(), za.data(), n);
    sc.caxpy({-0.25, 2.0}, x.data(), zs.data(), n);
    // caxpy has no reduction, so the two variants agree bit for bit up to FMA
    // contraction in the product.
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(za[k] - zs[k]) <= 1e-14 * (1 + std::abs(zs[k])));
  }
}

TEST_CASE("active table is the best available") {
  const auto& active = maxent::kernels::active();
  if (maxent::kernels::avx2_table())
    CHECK(active.name == "avx2");
  else
    CHECK(active.name == "scalar");
}

TEST_CASE("kernels handle exact small cases") {
  for (const KernelTable* t : {&maxent::kernels::scalar_table(), maxent::kernels::avx2_table()}) {
    if (!t) continue;
    const std::vector<cplx> x{{1, 2}, {3, -1}, {0, 1}};
    const std::vector<cplx> y{{2, 0}, {1, 1}, {-1, 0}};
    // (1+2i)2 + (3-i)(1+i) + i(-1) = 2+4i + 4+2i - i = 6+5i
    CHECK(t->dotu(x.data(), y.data(), 3) == cplx(6, 5));
    // (1+2i)2 + (3-i)(1-i) + i(-1) = 2+4i + 2-4i - i = 4-i
    CHECK(t->dotc(x.data(), y.data(), 3) == cplx(4, -1));
    CHECK(t->dotu(x.data(), y.data(), 0) == cplx(0, 0));
  }
}
