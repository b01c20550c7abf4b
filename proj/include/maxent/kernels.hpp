#pragma once

// Complex double inner-loop kernels. Every kernel has a scalar reference
// implementation; on x86-64 an AVX2+FMA variant is compiled in and picked at
// runtime when the CPU supports it. All arrays are interleaved (re, im).

#include <complex>
#include <cstddef>
#include <string_view>

namespace maxent::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  /// y[k] += alpha * x[k]
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// sum_k x[k] * y[k]
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  /// sum_k x[k] * conj(y[k])
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// The AVX2 table, or nullptr when it was not compiled in or the running CPU
/// lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table used by the library; resolved once on first call.
const KernelTable& active() noexcept;

}  // namespace maxent::kernels
