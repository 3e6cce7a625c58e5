#include "smimc/densela.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "smimc/errors.hpp"
#include "smimc/kernels.hpp"

namespace smimc {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  ComplexMatrix out(m, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) {
      raise(ErrorCode::DimensionMismatch, "ragged row list");
    }
    std::size_t j = 0;
    for (const Complex& v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  for (const Complex& v : a_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

bool ComplexMatrix::is_zero() const noexcept {
  for (const Complex& v : a_) {
    if (v != Complex{}) return false;
  }
  return true;
}

double ComplexMatrix::frob_norm() const noexcept {
  return std::sqrt(kernels::nrm2sq(a_.size(), a_.data()));
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const Complex& v : a_) best = std::max(best, std::abs(v));
  return best;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0,
                                   std::size_t nrows,
                                   std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    raise(ErrorCode::DimensionMismatch, "block out of range");
  }
  ComplexMatrix out(nrows, ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    std::copy_n(col(col0 + j) + row0, nrows, out.col(j));
  }
  return out;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0,
                              const ComplexMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) {
    raise(ErrorCode::DimensionMismatch, "block out of range");
  }
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::copy_n(b.col(j), b.rows(), col(col0 + j) + row0);
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    raise(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  }
  kernels::axpy(a_.size(), Complex{1.0}, rhs.a_.data(), a_.data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    raise(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
  }
  kernels::axpy(a_.size(), Complex{-1.0}, rhs.a_.data(), a_.data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  kernels::scal(a_.size(), s, a_.data());
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    raise(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t p = 0; p < a.cols(); ++p) {
      kernels::axpy(a.rows(), b(p, j), a.col(p), c.col(j));
    }
  }
  return c;
}

double Tolerance::resolved_rel(std::size_t rows,
                               std::size_t cols) const noexcept {
  if (rel >= 0.0) return rel;
  return static_cast<double>(std::max(rows, cols)) * kEps;
}

double Tolerance::cutoff(double sigma_max, std::size_t rows,
                         std::size_t cols) const noexcept {
  return std::max(abs, resolved_rel(rows, cols) * sigma_max);
}

SvdResult jacobi_svd(const ComplexMatrix& A, bool want_v) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  ComplexMatrix w = A;
  ComplexMatrix v = want_v ? ComplexMatrix::identity(n) : ComplexMatrix();

  // Cyclic one-sided Jacobi: orthogonalize column pairs until a full sweep
  // makes no rotation. Column norms stay exact representatives of the
  // singular values down to roundoff level.
  //
  // Two guards keep the sweep loop finite on rank-deficient input. Roundoff
  // re-seeds an O(1) relative coupling between a genuine column and the junk
  // column left behind by a cancellation, so the scale-free criterion alone
  // would keep shrinking the junk geometrically (into denormals) forever;
  // columns below an absolute noise floor tied to the initial matrix scale
  // are frozen instead. The floor sits ~2^-26 under eps*scale, far below
  // anything double precision can resolve.
  const double conv = kEps * (8.0 + std::sqrt(static_cast<double>(m)));
  double scale_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    scale_sq = std::max(scale_sq, kernels::nrm2sq(m, w.col(j)));
  }
  const double floor_sq =
      scale_sq * kEps * kEps * std::ldexp(1.0, -52);  // (eps*2^-26*scale)^2
  const int max_sweeps = 96;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double app = kernels::nrm2sq(m, w.col(p));
        const double aqq = kernels::nrm2sq(m, w.col(q));
        if (app <= floor_sq || aqq <= floor_sq) continue;
        const Complex apq = kernels::dotc(m, w.col(p), w.col(q));
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag <= conv * std::sqrt(app) * std::sqrt(aqq)) {
          continue;
        }
        const double tau = (aqq - app) / (2.0 * mag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const Complex s = (apq / mag) * (t * c);
        if (c == 1.0 && s == Complex{}) continue;  // exact no-op
        kernels::rot(m, w.col(p), w.col(q), c, s);
        if (want_v) kernels::rot(n, v.col(p), v.col(q), c, s);
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (sweep == max_sweeps) {
    throw std::runtime_error("jacobi_svd: no convergence");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    norms[j] = std::sqrt(kernels::nrm2sq(m, w.col(j)));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norms[a] > norms[b];
  });

  SvdResult out;
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.sigma[j] = norms[order[j]];
  if (want_v) {
    out.V = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::copy_n(v.col(order[j]), n, out.V.col(j));
    }
  }
  return out;
}

RankResult numerical_rank(const ComplexMatrix& A, Tolerance tol) {
  if (!A.all_finite()) {
    raise(ErrorCode::NonFiniteInput, "numerical_rank: NaN/Inf entry");
  }
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  const std::size_t k = std::min(m, n);

  RankResult result;
  if (k == 0) {
    result.tolerance_used = tol.cutoff(0.0, m, n);
    return result;
  }
  // Orthogonalizing the smaller column count is cheaper; sigma is identical.
  SvdResult svd =
      (m >= n) ? jacobi_svd(A, false) : jacobi_svd(A.adjoint(), false);
  svd.sigma.resize(k);
  result.singular_values = std::move(svd.sigma);
  result.tolerance_used = tol.cutoff(result.singular_values[0], m, n);
  for (double s : result.singular_values) {
    if (s > result.tolerance_used) ++result.rank;
  }
  return result;
}

namespace {

struct Householder {
  std::vector<Complex> v;
  double beta = 0.0;  // 2 / ||v||^2
};

// In-place Householder QR of w (m x k, m >= k); returns the reflectors.
// The upper triangle of w becomes R.
std::vector<Householder> householder_qr(ComplexMatrix& w) {
  const std::size_t m = w.rows();
  const std::size_t k = w.cols();
  std::vector<Householder> hh(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t len = m - j;
    Complex* x = w.col(j) + j;
    const double norm = std::sqrt(kernels::nrm2sq(len, x));
    if (norm == 0.0) {
      raise(ErrorCode::RankDeficientL, "exactly dependent column");
    }
    const Complex alpha = x[0];
    const double aa = std::abs(alpha);
    const Complex phase = (aa == 0.0) ? Complex{1.0} : alpha / aa;

    Householder h;
    h.v.assign(x, x + len);
    h.v[0] += phase * norm;
    h.beta = 2.0 / kernels::nrm2sq(len, h.v.data());

    x[0] = -phase * norm;
    std::fill(x + 1, x + len, Complex{});
    for (std::size_t t = j + 1; t < k; ++t) {
      Complex* y = w.col(t) + j;
      const Complex coeff = h.beta * kernels::dotc(len, h.v.data(), y);
      kernels::axpy(len, -coeff, h.v.data(), y);
    }
    hh[j] = std::move(h);
  }
  return hh;
}

}  // namespace

ComplexMatrix least_squares_solve(const ComplexMatrix& L,
                                  const ComplexMatrix& B) {
  const std::size_t m = L.rows();
  const std::size_t k = L.cols();
  const std::size_t p = B.cols();
  if (B.rows() != m) {
    raise(ErrorCode::DimensionMismatch, "least_squares_solve: rows differ");
  }
  if (!L.all_finite() || !B.all_finite()) {
    raise(ErrorCode::NonFiniteInput, "least_squares_solve: NaN/Inf entry");
  }
  if (k == 0) return ComplexMatrix(0, p);
  if (m < k) {
    raise(ErrorCode::RankDeficientL, "fewer rows than columns");
  }

  ComplexMatrix r = L;
  const std::vector<Householder> hh = householder_qr(r);

  // Full column rank guard on the R diagonal; failure means the caller's
  // invariant (L built from independent columns) broke down.
  double dmax = 0.0;
  for (std::size_t j = 0; j < k; ++j) dmax = std::max(dmax, std::abs(r(j, j)));
  const double cutoff = static_cast<double>(std::max(m, k)) * kEps * dmax;
  for (std::size_t j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) <= cutoff) {
      raise(ErrorCode::RankDeficientL, "numerically dependent column");
    }
  }

  ComplexMatrix t = B;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t len = m - j;
    for (std::size_t col = 0; col < p; ++col) {
      Complex* y = t.col(col) + j;
      const Complex coeff =
          hh[j].beta * kernels::dotc(len, hh[j].v.data(), y);
      kernels::axpy(len, -coeff, hh[j].v.data(), y);
    }
  }

  ComplexMatrix z(k, p);
  for (std::size_t col = 0; col < p; ++col) {
    for (std::size_t i = k; i-- > 0;) {
      Complex acc = t(i, col);
      for (std::size_t u = i + 1; u < k; ++u) acc -= r(i, u) * z(u, col);
      z(i, col) = acc / r(i, i);
    }
  }
  return z;
}

Compression column_compress(const ComplexMatrix& A, Tolerance tol) {
  if (!A.all_finite()) {
    raise(ErrorCode::NonFiniteInput, "column_compress: NaN/Inf entry");
  }
  const std::size_t n = A.cols();
  SvdResult svd = jacobi_svd(A, true);

  Compression out;
  out.Q = std::move(svd.V);
  const double sigma_max = n == 0 ? 0.0 : svd.sigma[0];
  out.tolerance_used = tol.cutoff(sigma_max, A.rows(), n);
  for (double s : svd.sigma) {
    if (s > out.tolerance_used) ++out.rank;
  }
  return out;
}

Complex determinant(ComplexMatrix a) {
  if (a.rows() != a.cols()) {
    raise(ErrorCode::DimensionMismatch, "determinant: square input required");
  }
  const std::size_t n = a.rows();
  Complex det{1.0};
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    double best = std::abs(a(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      const double cand = std::abs(a(i, j));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) return Complex{};
    if (piv != j) {
      for (std::size_t t = j; t < n; ++t) std::swap(a(j, t), a(piv, t));
      det = -det;
    }
    det *= a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      const Complex f = a(i, j) / a(j, j);
      for (std::size_t t = j + 1; t < n; ++t) a(i, t) -= f * a(j, t);
    }
  }
  return det;
}

}  // namespace smimc
