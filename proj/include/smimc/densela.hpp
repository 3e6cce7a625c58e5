#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace smimc {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major storage so that every column is a
/// contiguous span the vector kernels can run over. Entry access is (row,
/// col); construction helpers take entries in row-major reading order.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  /// Entries listed row by row.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return a_[j * rows_ + i];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return a_[j * rows_ + i];
  }

  Complex* col(std::size_t j) noexcept { return a_.data() + j * rows_; }
  const Complex* col(std::size_t j) const noexcept {
    return a_.data() + j * rows_;
  }

  bool all_finite() const noexcept;
  bool is_zero() const noexcept;
  double frob_norm() const noexcept;
  double max_abs() const noexcept;

  ComplexMatrix adjoint() const;
  ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

  const std::vector<Complex>& data() const noexcept { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

/// Rank cutoff policy: effective cutoff is max(abs, rel * sigma_max) with
/// rel defaulting to max(rows, cols) * machine epsilon when negative.
struct Tolerance {
  double rel = -1.0;
  double abs = 0.0;

  double resolved_rel(std::size_t rows, std::size_t cols) const noexcept;
  double cutoff(double sigma_max, std::size_t rows,
                std::size_t cols) const noexcept;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<double> singular_values;  // nonincreasing, length min(m,n)
  double tolerance_used = 0.0;
};

/// One-sided Jacobi SVD data: sigma holds all column norms of A*V in
/// nonincreasing order (length cols), V is unitary when requested.
struct SvdResult {
  std::vector<double> sigma;
  ComplexMatrix V;
};

SvdResult jacobi_svd(const ComplexMatrix& A, bool want_v);

/// Numerical rank of A under the cutoff policy. Deterministic for identical
/// input. Throws NonFiniteInput on NaN/Inf entries.
RankResult numerical_rank(const ComplexMatrix& A, Tolerance tol = {});

/// Minimum-norm least-squares solution Z of L * Z ~ B through a Householder
/// QR of L. L must have full column rank (RankDeficientL otherwise; an L
/// losing rank here signals a logic error upstream, not a user input issue).
ComplexMatrix least_squares_solve(const ComplexMatrix& L,
                                  const ComplexMatrix& B);

struct Compression {
  ComplexMatrix Q;  // unitary, cols(A) x cols(A)
  std::size_t rank = 0;
  double tolerance_used = 0.0;
};

/// Unitary right transformation concentrating the column space: A*Q has its
/// `rank` independent columns first and trailing columns below the cutoff.
/// Shares the cutoff policy with numerical_rank so the two never disagree.
Compression column_compress(const ComplexMatrix& A, Tolerance tol = {});

/// Determinant via LU with partial pivoting (square input).
Complex determinant(ComplexMatrix A);

}  // namespace smimc
