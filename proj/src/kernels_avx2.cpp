// AVX2+FMA variants of the complex vector kernels. This translation unit is
// the only one compiled with -mavx2 -mfma; callers reach it through the
// dispatch table, gated on a runtime CPU check.

#include "smimc/kernels.hpp"

#if defined(SMIMC_HAVE_AVX2)

#include <immintrin.h>

namespace smimc::kernels {
namespace {

// A __m256d holds two interleaved complex<double> values.

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d pair_swap(__m256d v) {
  // (re0, im0, re1, im1) -> (im0, re0, im1, re1)
  return _mm256_permute_pd(v, 0x5);
}

// (k) * v for a complex constant k, two complex lanes at a time.
inline __m256d cmul_const(__m256d kr, __m256d ki, __m256d v) {
  return _mm256_fmaddsub_pd(kr, v, _mm256_mul_pd(ki, pair_swap(v)));
}

Complex dotc_avx2(std::size_t n, const Complex* x, const Complex* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_a = _mm256_setzero_pd();  // xr*yr, xi*yi lanes
  __m256d acc_b = _mm256_setzero_pd();  // xr*yi, xi*yr lanes
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_a = _mm256_fmadd_pd(xv, yv, acc_a);
    acc_b = _mm256_fmadd_pd(xv, pair_swap(yv), acc_b);
  }
  const __m256d flip_odd = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  double re = hsum(acc_a);
  double im = hsum(_mm256_xor_pd(acc_b, flip_odd));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy_avx2(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    yv = _mm256_add_pd(yv, cmul_const(ar, ai, xv));
    _mm256_storeu_pd(yp + 2 * i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(std::size_t n, Complex a, Complex* x) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    _mm256_storeu_pd(xp + 2 * i, cmul_const(ar, ai, xv));
  }
  for (; i < n; ++i) x[i] *= a;
}

double nrm2sq_avx2(std::size_t n, const Complex* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void rot_avx2(std::size_t n, Complex* x, Complex* y, double c, Complex s) {
  double* xp = reinterpret_cast<double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const __m256d scr = sr;                         // conj(s).re
  const __m256d sci = _mm256_set1_pd(-s.imag());  // conj(s).im
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d nx = _mm256_fmsub_pd(cv, xv, cmul_const(scr, sci, yv));
    __m256d ny = _mm256_fmadd_pd(cv, yv, cmul_const(sr, si, xv));
    _mm256_storeu_pd(xp + 2 * i, nx);
    _mm256_storeu_pd(yp + 2 * i, ny);
  }
  const Complex sc = std::conj(s);
  for (; i < n; ++i) {
    const Complex xi = x[i], yi = y[i];
    x[i] = c * xi - sc * yi;
    y[i] = s * xi + c * yi;
  }
}

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

const KernelTable* avx2_table() noexcept {
  static const KernelTable table{dotc_avx2, axpy_avx2, scal_avx2, nrm2sq_avx2,
                                 rot_avx2, "avx2"};
  static const bool available = cpu_has_avx2();
  return available ? &table : nullptr;
}

}  // namespace smimc::kernels

#else  // !SMIMC_HAVE_AVX2

namespace smimc::kernels {

const KernelTable* avx2_table() noexcept { return nullptr; }

}  // namespace smimc::kernels

#endif
