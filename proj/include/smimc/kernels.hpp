#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace smimc::kernels {

using Complex = std::complex<double>;

/// Vector kernels over contiguous arrays of complex<double> (interleaved
/// re/im). These are the inner loops of the dense kernel: every rank
/// decision, least-squares solve and coefficient-stack update runs through
/// them. Each backend must produce results equal to the scalar reference up
/// to roundoff (SIMD lanes reassociate sums).
struct KernelTable {
  // sum_i conj(x[i]) * y[i]
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);
  // y[i] += a * x[i]
  void (*axpy)(std::size_t n, Complex a, const Complex* x, Complex* y);
  // x[i] *= a
  void (*scal)(std::size_t n, Complex a, Complex* x);
  // sum_i |x[i]|^2
  double (*nrm2sq)(std::size_t n, const Complex* x);
  // simultaneous plane rotation, c real:
  //   x[i], y[i] <- c*x[i] - conj(s)*y[i],  s*x[i] + c*y[i]
  void (*rot)(std::size_t n, Complex* x, Complex* y, double c, Complex s);
  const char* name;
};

/// Always available reference implementation.
const KernelTable& scalar_table() noexcept;

/// AVX2+FMA implementation; nullptr when not compiled in or the CPU lacks
/// the instructions.
const KernelTable* avx2_table() noexcept;

/// Backend chosen at startup: best available, unless the SMIMC_KERNELS
/// environment variable ("scalar", "avx2", "auto") says otherwise.
const KernelTable& active() noexcept;

/// Re-select the backend (tests). Unknown or unavailable names fall back to
/// scalar; "auto" restores the default choice.
void force_backend(std::string_view name) noexcept;

inline Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  return active().dotc(n, x, y);
}
inline void axpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  active().axpy(n, a, x, y);
}
inline void scal(std::size_t n, Complex a, Complex* x) {
  active().scal(n, a, x);
}
inline double nrm2sq(std::size_t n, const Complex* x) {
  return active().nrm2sq(n, x);
}
inline void rot(std::size_t n, Complex* x, Complex* y, double c, Complex s) {
  active().rot(n, x, y, c, s);
}

}  // namespace smimc::kernels
