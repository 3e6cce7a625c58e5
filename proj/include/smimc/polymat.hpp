#pragma once

#include <vector>

#include "smimc/densela.hpp"

namespace smimc {

/// Matrix-valued Laurent series about an expansion point: coeff(t) is the
/// coefficient of (lambda - point)^(lowest + t). `exact` marks a complete
/// (Laurent-polynomial) value; otherwise the stored window is valid and
/// everything above it is unknown.
class LaurentMatrix {
 public:
  LaurentMatrix();
  LaurentMatrix(Complex point, int lowest, std::vector<ComplexMatrix> coeffs,
                bool exact = true);

  static LaurentMatrix zero(std::size_t rows, std::size_t cols,
                            Complex point = {});
  static LaurentMatrix constant(ComplexMatrix c, Complex point = {});
  static LaurentMatrix identity(std::size_t n, Complex point = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex point() const noexcept { return point_; }
  int lowest() const noexcept { return lowest_; }
  int highest() const noexcept {
    return lowest_ + static_cast<int>(coeffs_.size()) - 1;
  }
  bool exact() const noexcept { return exact_; }
  std::size_t count() const noexcept { return coeffs_.size(); }

  const ComplexMatrix& coeff(std::size_t t) const { return coeffs_.at(t); }
  ComplexMatrix& coeff(std::size_t t) { return coeffs_.at(t); }
  /// Coefficient of (lambda - point)^order; zero outside the window for
  /// exact values, InsufficientSeriesOrder above the window otherwise.
  ComplexMatrix coeff_at_order(int order) const;

  bool is_zero() const noexcept;
  /// Relabel the window: same coefficient list, new lowest exponent. This is
  /// exact multiplication by (lambda - point)^(new_lowest - lowest).
  LaurentMatrix with_lowest(int new_lowest) const;
  LaurentMatrix truncated(std::size_t new_count, bool mark_inexact) const;

  bool all_finite() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Complex point_{};
  int lowest_ = 0;
  std::vector<ComplexMatrix> coeffs_;
  bool exact_ = true;
};

/// Exact polynomial value: a LaurentMatrix with lowest == 0 and exact set.
class PolyMatrix : public LaurentMatrix {
 public:
  PolyMatrix();
  explicit PolyMatrix(LaurentMatrix m);
  PolyMatrix(Complex point, std::vector<ComplexMatrix> coeffs);

  int degree() const noexcept;
};

ComplexMatrix eval(const LaurentMatrix& m, Complex lambda);

/// Taylor-shift the polynomial to a new expansion point (degree preserved;
/// coefficient t becomes the t-th derivative at the new point over t!).
PolyMatrix reexpand(const PolyMatrix& p, Complex new_point);

/// Cauchy product of the coefficient stacks. When either factor is inexact
/// the result is truncated to the provably correct window and marked
/// inexact.
LaurentMatrix mul(const LaurentMatrix& a, const LaurentMatrix& b);

/// alpha*A + beta*B on the common grid of orders. Exact inputs extend with
/// zeros; inexact windows intersect.
LaurentMatrix lin_comb(Complex alpha, const LaurentMatrix& a, Complex beta,
                       const LaurentMatrix& b);

/// Scale entry (j,k) by (lambda-point)^(col_exp[k] - row_exp[j]) through
/// coefficient shifts within the existing window; a negative shift landing a
/// nonzero coefficient below `lowest` is an assembly logic error.
LaurentMatrix monomial_scale(const LaurentMatrix& m,
                             const std::vector<int>& row_exp,
                             const std::vector<int>& col_exp);

/// Frobenius norm of the stacked coefficient list [C_0, C_1, ...].
double frob_norm(const LaurentMatrix& m);

/// Drop exactly-zero leading coefficients (tightening `lowest`), and
/// trailing zeros for exact values. Entries of magnitude <= tol_abs are
/// treated as zero when tol_abs > 0 (explicit opt-in; default trims exact
/// zeros only). An identically zero function collapses to the canonical
/// zero value, recognizable via is_zero().
LaurentMatrix trim_leading(const LaurentMatrix& m, double tol_abs = 0.0);

}  // namespace smimc
