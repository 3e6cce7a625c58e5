#pragma once

// Shared fixtures and independent reference computations for the test
// suites. Everything here is deliberately written without going through the
// code paths under test: Toeplitz blocks by triple loop, singular values by
// construction or closed form, unitaries as products of elementary
// rotations.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "smimc/densela.hpp"
#include "smimc/polymat.hpp"

namespace testsupport {

using smimc::Complex;
using smimc::ComplexMatrix;
using smimc::LaurentMatrix;
using smimc::PolyMatrix;

struct TestRng {
  std::mt19937_64 gen;
  explicit TestRng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double normal() { return std::normal_distribution<double>()(gen); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
  }
  Complex cnormal() { return {normal(), normal()}; }
  Complex unit_phase() {
    const double a = uniform(0.0, 2.0 * 3.14159265358979323846);
    return {std::cos(a), std::sin(a)};
  }
};

inline ComplexMatrix random_matrix(TestRng& rng, std::size_t m, std::size_t n,
                                   bool complex_entries = true) {
  ComplexMatrix a(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      a(i, j) = complex_entries ? rng.cnormal() : Complex{rng.normal()};
    }
  }
  return a;
}

/// Product of elementary plane rotations and phases: unitary by
/// construction (each factor is), independent of any factorization code.
inline ComplexMatrix random_unitary(TestRng& rng, std::size_t n) {
  ComplexMatrix u = ComplexMatrix::identity(n);
  for (std::size_t pass = 0; pass < 2 * n * n; ++pass) {
    if (n < 2) break;
    std::size_t p = rng.index(n);
    std::size_t q = rng.index(n);
    if (p == q) continue;
    const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double c = std::cos(theta);
    const Complex s = rng.unit_phase() * std::sin(theta);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex up = u(i, p), uq = u(i, q);
      u(i, p) = c * up - std::conj(s) * uq;
      u(i, q) = s * up + c * uq;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Complex phase = rng.unit_phase();
    for (std::size_t i = 0; i < n; ++i) u(i, j) *= phase;
  }
  return u;
}

/// A = U diag(sigma) V^H with planted singular values.
inline ComplexMatrix planted_singular_values(TestRng& rng, std::size_t m,
                                             std::size_t n,
                                             const std::vector<double>& sigma) {
  const ComplexMatrix u = random_unitary(rng, m);
  const ComplexMatrix v = random_unitary(rng, n);
  ComplexMatrix s(m, n);
  for (std::size_t i = 0; i < sigma.size(); ++i) s(i, i) = sigma[i];
  return u * s * v.adjoint();
}

/// Exact singular values of a 2x2 via Frobenius norm and determinant.
inline std::pair<double, double> svd2x2(const ComplexMatrix& a) {
  const double f2 = a.frob_norm() * a.frob_norm();
  const double d = std::abs(smimc::determinant(a));
  const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d));
  const double s1 = std::sqrt((f2 + disc) / 2.0);
  const double s2 = s1 > 0.0 ? d / s1 : 0.0;
  return {s1, s2};
}

inline double mat_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix d = a;
  d -= b;
  return d.frob_norm();
}

/// Independent block-Toeplitz builder: plain triple loop over block row,
/// block column and entry, no shared indexing helpers.
inline ComplexMatrix naive_toeplitz(const LaurentMatrix& m, int k) {
  const std::size_t nb = static_cast<std::size_t>(k - m.lowest()) + 1;
  ComplexMatrix t(m.rows() * nb, m.cols() * nb);
  for (std::size_t br = 0; br < nb; ++br) {
    for (std::size_t bc = 0; bc < nb; ++bc) {
      if (bc < br) continue;
      const int order = m.lowest() + static_cast<int>(bc) - static_cast<int>(br);
      const int idx = order - m.lowest();
      if (idx < 0 || idx >= static_cast<int>(m.count())) continue;
      const ComplexMatrix& block = m.coeff(static_cast<std::size_t>(idx));
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          t(br * m.rows() + i, bc * m.cols() + j) = block(i, j);
        }
      }
    }
  }
  return t;
}

/// diag((l-p)^exps[0], ..., (l-p)^exps[r-1]) padded to m x n, exact.
inline PolyMatrix diag_poly(std::size_t m, std::size_t n,
                            const std::vector<int>& exps, Complex point = {}) {
  int top = 0;
  for (int e : exps) top = std::max(top, e);
  std::vector<ComplexMatrix> coeffs(static_cast<std::size_t>(top) + 1,
                                    ComplexMatrix(m, n));
  for (std::size_t j = 0; j < exps.size(); ++j) {
    coeffs[static_cast<std::size_t>(exps[j])](j, j) = 1.0;
  }
  return PolyMatrix(point, std::move(coeffs));
}

/// [[l, 1], [0, l]] about 0: one structural index 0 and one equal to 2.
inline PolyMatrix jordan_block_2x2() {
  ComplexMatrix c0 = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  ComplexMatrix c1 = ComplexMatrix::identity(2);
  return PolyMatrix(Complex{}, {c0, c1});
}

inline LaurentMatrix random_poly_matrix(TestRng& rng, std::size_t m,
                                        std::size_t n, int degree,
                                        bool complex_entries = true,
                                        Complex point = {}) {
  std::vector<ComplexMatrix> coeffs;
  for (int t = 0; t <= degree; ++t) {
    coeffs.push_back(random_matrix(rng, m, n, complex_entries));
  }
  return LaurentMatrix(point, 0, std::move(coeffs), true);
}

}  // namespace testsupport
