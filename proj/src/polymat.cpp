#include "smimc/polymat.hpp"

#include <algorithm>
#include <cmath>

#include "smimc/errors.hpp"
#include "smimc/kernels.hpp"

namespace smimc {

namespace {

Complex powi(Complex z, int e) {
  if (e < 0) return Complex{1.0} / powi(z, -e);
  Complex acc{1.0};
  Complex base = z;
  for (unsigned k = static_cast<unsigned>(e); k != 0; k >>= 1) {
    if (k & 1u) acc *= base;
    base *= base;
  }
  return acc;
}

}  // namespace

LaurentMatrix::LaurentMatrix()
    : rows_(0), cols_(0), point_{}, lowest_(0), coeffs_(1), exact_(true) {}

LaurentMatrix::LaurentMatrix(Complex point, int lowest,
                             std::vector<ComplexMatrix> coeffs, bool exact)
    : point_(point), lowest_(lowest), coeffs_(std::move(coeffs)),
      exact_(exact) {
  if (coeffs_.empty()) {
    raise(ErrorCode::DimensionMismatch, "empty coefficient list");
  }
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  for (const ComplexMatrix& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      raise(ErrorCode::DimensionMismatch, "ragged coefficient list");
    }
  }
}

LaurentMatrix LaurentMatrix::zero(std::size_t rows, std::size_t cols,
                                  Complex point) {
  return LaurentMatrix(point, 0, {ComplexMatrix(rows, cols)}, true);
}

LaurentMatrix LaurentMatrix::constant(ComplexMatrix c, Complex point) {
  return LaurentMatrix(point, 0, {std::move(c)}, true);
}

LaurentMatrix LaurentMatrix::identity(std::size_t n, Complex point) {
  return constant(ComplexMatrix::identity(n), point);
}

ComplexMatrix LaurentMatrix::coeff_at_order(int order) const {
  const int idx = order - lowest_;
  if (idx >= 0 && idx < static_cast<int>(coeffs_.size())) {
    return coeffs_[static_cast<std::size_t>(idx)];
  }
  if (!exact_ && idx >= static_cast<int>(coeffs_.size())) {
    raise(ErrorCode::InsufficientSeriesOrder,
          "coefficient above the valid window of a truncated series");
  }
  return ComplexMatrix(rows_, cols_);
}

bool LaurentMatrix::is_zero() const noexcept {
  for (const ComplexMatrix& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

LaurentMatrix LaurentMatrix::with_lowest(int new_lowest) const {
  LaurentMatrix out = *this;
  out.lowest_ = new_lowest;
  return out;
}

LaurentMatrix LaurentMatrix::truncated(std::size_t new_count,
                                       bool mark_inexact) const {
  if (new_count == 0 || new_count > coeffs_.size()) {
    raise(ErrorCode::InsufficientSeriesOrder, "truncation window empty");
  }
  LaurentMatrix out = *this;
  out.coeffs_.resize(new_count);
  if (mark_inexact) out.exact_ = false;
  return out;
}

bool LaurentMatrix::all_finite() const noexcept {
  for (const ComplexMatrix& c : coeffs_) {
    if (!c.all_finite()) return false;
  }
  return true;
}

PolyMatrix::PolyMatrix() = default;

PolyMatrix::PolyMatrix(LaurentMatrix m) : LaurentMatrix(std::move(m)) {
  if (lowest() != 0 || !exact()) {
    raise(ErrorCode::DimensionMismatch,
          "polynomial value requires lowest == 0 and an exact series");
  }
}

PolyMatrix::PolyMatrix(Complex point, std::vector<ComplexMatrix> coeffs)
    : PolyMatrix(LaurentMatrix(point, 0, std::move(coeffs), true)) {}

int PolyMatrix::degree() const noexcept {
  for (std::size_t t = count(); t-- > 0;) {
    if (!coeff(t).is_zero()) return static_cast<int>(t);
  }
  return 0;
}

ComplexMatrix eval(const LaurentMatrix& m, Complex lambda) {
  const Complex z = lambda - m.point();
  if (z == Complex{}) {
    if (m.lowest() < 0) {
      raise(ErrorCode::EvalAtPole, "evaluation at the expansion point of a pole");
    }
    return m.coeff_at_order(0);
  }
  ComplexMatrix acc = m.coeff(m.count() - 1);
  for (std::size_t t = m.count() - 1; t-- > 0;) {
    acc *= z;
    acc += m.coeff(t);
  }
  acc *= powi(z, m.lowest());
  return acc;
}

PolyMatrix reexpand(const PolyMatrix& p, Complex new_point) {
  const Complex delta = new_point - p.point();
  std::vector<ComplexMatrix> c;
  c.reserve(p.count());
  for (std::size_t t = 0; t < p.count(); ++t) c.push_back(p.coeff(t));
  if (delta != Complex{}) {
    // Repeated synthetic division; after pass j, c[j] is final.
    const std::size_t d = c.size() - 1;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t s = d; s-- > j;) {
        ComplexMatrix t = c[s + 1];
        t *= delta;
        c[s] += t;
      }
    }
  }
  return PolyMatrix(new_point, std::move(c));
}

LaurentMatrix mul(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) {
    raise(ErrorCode::DimensionMismatch, "mul: inner dimensions differ");
  }
  if (a.point() != b.point()) {
    raise(ErrorCode::PointMismatch, "mul: different expansion points");
  }
  const bool exact = a.exact() && b.exact();
  const std::size_t full = a.count() + b.count() - 1;
  std::size_t window = full;
  if (!a.exact()) window = std::min(window, a.count());
  if (!b.exact()) window = std::min(window, b.count());

  std::vector<ComplexMatrix> out(window, ComplexMatrix(a.rows(), b.cols()));
  for (std::size_t i = 0; i < a.count(); ++i) {
    if (i >= window) break;
    if (a.coeff(i).is_zero()) continue;
    const std::size_t jmax = std::min(b.count(), window - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      out[i + j] += a.coeff(i) * b.coeff(j);
    }
  }
  return LaurentMatrix(a.point(), a.lowest() + b.lowest(), std::move(out),
                       exact);
}

LaurentMatrix lin_comb(Complex alpha, const LaurentMatrix& a, Complex beta,
                       const LaurentMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(ErrorCode::DimensionMismatch, "lin_comb: shapes differ");
  }
  if (a.point() != b.point()) {
    raise(ErrorCode::PointMismatch, "lin_comb: different expansion points");
  }
  const int lo = std::min(a.lowest(), b.lowest());
  int hi;
  if (a.exact() && b.exact()) {
    hi = std::max(a.highest(), b.highest());
  } else if (a.exact()) {
    hi = b.highest();
  } else if (b.exact()) {
    hi = a.highest();
  } else {
    hi = std::min(a.highest(), b.highest());
  }
  if (hi < lo) {
    raise(ErrorCode::InsufficientSeriesOrder, "lin_comb: empty common window");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) {
    ComplexMatrix c = a.coeff_at_order(k);
    c *= alpha;
    ComplexMatrix d = b.coeff_at_order(k);
    d *= beta;
    c += d;
    out.push_back(std::move(c));
  }
  return LaurentMatrix(a.point(), lo, std::move(out), a.exact() && b.exact());
}

LaurentMatrix monomial_scale(const LaurentMatrix& m,
                             const std::vector<int>& row_exp,
                             const std::vector<int>& col_exp) {
  if (row_exp.size() != m.rows() || col_exp.size() != m.cols()) {
    raise(ErrorCode::DimensionMismatch, "monomial_scale: exponent list sizes");
  }
  const int count = static_cast<int>(m.count());
  int min_shift = 0;
  int max_target = count - 1;
  for (std::size_t k = 0; k < m.cols(); ++k) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      const int s = col_exp[k] - row_exp[j];
      min_shift = std::min(min_shift, s);
      for (int t = 0; t < count; ++t) {
        if (m.coeff(static_cast<std::size_t>(t))(j, k) == Complex{}) continue;
        if (t + s < 0) {
          raise(ErrorCode::NegativeShiftOnNonzeroEntry,
                "monomial_scale: shift below the window on a nonzero entry");
        }
        max_target = std::max(max_target, t + s);
      }
    }
  }
  // Inexact windows shrink by the largest downward shift; exact values
  // extend to hold every shifted coefficient.
  const int out_count =
      m.exact() ? max_target + 1 : std::max(1, count + min_shift);
  std::vector<ComplexMatrix> out(static_cast<std::size_t>(out_count),
                                 ComplexMatrix(m.rows(), m.cols()));
  for (std::size_t k = 0; k < m.cols(); ++k) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      const int s = col_exp[k] - row_exp[j];
      for (int t = 0; t < count; ++t) {
        const Complex v = m.coeff(static_cast<std::size_t>(t))(j, k);
        if (v == Complex{}) continue;
        const int target = t + s;
        if (target < out_count) {
          out[static_cast<std::size_t>(target)](j, k) = v;
        }
      }
    }
  }
  return LaurentMatrix(m.point(), m.lowest(), std::move(out), m.exact());
}

double frob_norm(const LaurentMatrix& m) {
  double acc = 0.0;
  for (std::size_t t = 0; t < m.count(); ++t) {
    acc += kernels::nrm2sq(m.coeff(t).data().size(), m.coeff(t).data().data());
  }
  return std::sqrt(acc);
}

LaurentMatrix trim_leading(const LaurentMatrix& m, double tol_abs) {
  const auto negligible = [tol_abs](const ComplexMatrix& c) {
    return tol_abs > 0.0 ? c.max_abs() <= tol_abs : c.is_zero();
  };
  std::size_t first = 0;
  while (first < m.count() && negligible(m.coeff(first))) ++first;
  if (first == m.count()) {
    return LaurentMatrix::zero(m.rows(), m.cols(), m.point());
  }
  std::size_t last = m.count() - 1;
  if (m.exact()) {
    while (last > first && negligible(m.coeff(last))) --last;
  }
  std::vector<ComplexMatrix> out;
  out.reserve(last - first + 1);
  for (std::size_t t = first; t <= last; ++t) out.push_back(m.coeff(t));
  return LaurentMatrix(m.point(), m.lowest() + static_cast<int>(first),
                       std::move(out), m.exact());
}

}  // namespace smimc
