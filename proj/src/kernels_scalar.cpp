#include "smimc/kernels.hpp"

namespace smimc::kernels {
namespace {

Complex dotc_scalar(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy_scalar(std::size_t n, Complex a, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(std::size_t n, Complex a, Complex* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double nrm2sq_scalar(std::size_t n, const Complex* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

void rot_scalar(std::size_t n, Complex* x, Complex* y, double c, Complex s) {
  const Complex sc = std::conj(s);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex xi = x[i], yi = y[i];
    x[i] = c * xi - sc * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{dotc_scalar, axpy_scalar, scal_scalar,
                                 nrm2sq_scalar, rot_scalar, "scalar"};
  return table;
}

}  // namespace smimc::kernels
