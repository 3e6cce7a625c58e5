#include "smimc/smithform.hpp"

#include <algorithm>
#include <cmath>

#include "smimc/errors.hpp"

namespace smimc {

namespace {

LaurentMatrix slice_cols(const LaurentMatrix& m, std::size_t from,
                         std::size_t ncols) {
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(m.count());
  for (std::size_t t = 0; t < m.count(); ++t) {
    coeffs.push_back(m.coeff(t).block(0, from, m.rows(), ncols));
  }
  return LaurentMatrix(m.point(), m.lowest(), std::move(coeffs), m.exact());
}

CompactDecomposition empty_decomposition(const LaurentMatrix& m) {
  CompactDecomposition d;
  d.point = m.point();
  d.rows = m.rows();
  d.cols = m.cols();
  d.Nr = PolyMatrix(m.point(), {ComplexMatrix(m.cols(), 0)});
  d.Mr_hat = LaurentMatrix(m.point(), 0, {ComplexMatrix(m.rows(), 0)}, true);
  d.diagnostics.norm_input = frob_norm(m);
  return d;
}

}  // namespace

PolyMatrix assemble_unimodular(const RankSearchTrace& trace) {
  if (trace.steps.empty() ||
      trace.steps.back().rank_after != trace.normal_rank) {
    raise(ErrorCode::IncompleteProfile,
          "assemble_unimodular: trace did not reach the normal rank");
  }
  const std::size_t n = trace.cols;
  LaurentMatrix u = LaurentMatrix::identity(n, trace.point);
  std::vector<int> exps(n);
  for (const StepRecord& step : trace.steps) {
    ComplexMatrix ni = ComplexMatrix::identity(n);
    if (step.Q.rows() > 0) {
      ni.set_block(step.rank_before, step.rank_before, step.Q);
      if (step.rank_before > 0) {
        ni.set_block(0, step.rank_before, step.Z * step.Q);
      }
    }
    // Conjugation by the monomial scalings accumulated before this step:
    // column j has absorbed min(c_j, i) divisions so far.
    for (std::size_t j = 0; j < n; ++j) {
      exps[j] = static_cast<int>(
          std::min(trace.col_shifts[j], step.index));
    }
    const LaurentMatrix nhat = monomial_scale(
        LaurentMatrix::constant(ni, trace.point), exps, exps);
    u = mul(u, nhat);
  }
  return PolyMatrix(trim_leading(u));
}

CompactDecomposition decompose(const LaurentMatrix& m,
                               const DecomposeOptions& options) {
  const LaurentMatrix trimmed = trim_leading(m);
  if (trimmed.is_zero()) return empty_decomposition(m);

  const int shift = trimmed.lowest();
  const LaurentMatrix scaled = trimmed.with_lowest(0);

  std::size_t r = options.normal_rank
                      ? *options.normal_rank
                      : estimate_normal_rank(scaled, options.rank_trials,
                                             options.tol, options.seed);
  if (r == 0) return empty_decomposition(m);

  SearchOptions search_options;
  search_options.tol = options.tol;
  search_options.max_order = options.max_order;
  search_options.global_scale = options.global_scale;
  if (search_options.max_order == 0 && scaled.exact()) {
    const std::size_t ell =
        shift < 0 ? static_cast<std::size_t>(-shift) : 0;
    search_options.max_order =
        ell + std::min(m.rows(), m.cols()) * (scaled.count() - 1) + 1;
  }
  const RankSearchTrace trace = search(scaled, r, search_options);

  const PolyMatrix n_full = assemble_unimodular(trace);

  CompactDecomposition d;
  d.point = m.point();
  d.rows = m.rows();
  d.cols = m.cols();
  d.normal_rank = r;
  d.ell = -shift;
  d.d_prime = trace.d_prime;
  d.sigma.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    d.sigma.push_back(static_cast<int>(trace.col_shifts[j]) + shift);
  }
  const std::vector<std::size_t> rho = trace.rho();
  d.e.reserve(rho.size());
  for (std::size_t t = 0; t < rho.size(); ++t) {
    d.e.push_back(rho[t] - (t == 0 ? 0 : rho[t - 1]));
  }

  d.Nr = PolyMatrix(slice_cols(n_full, 0, r));

  LaurentMatrix final_series(trace.point, 0, trace.final_stack, trace.exact);
  if (!trace.exact) {
    final_series = final_series.truncated(trace.valid_count, true);
  }
  LaurentMatrix mr = slice_cols(final_series, 0, r);
  if (mr.exact()) {
    // tidy trailing zero coefficients; the constant block has full rank, so
    // `lowest` cannot move
    mr = trim_leading(mr);
  }
  d.Mr_hat = std::move(mr);

  d.diagnostics.rho = rho;
  d.diagnostics.norm_N = frob_norm(n_full);
  if (options.emit_full_n) d.N_full = n_full;

  const ResidualReport report = residual_report(m, d);
  d.diagnostics.res_rel = report.res_rel;
  d.diagnostics.norm_input = report.norm_input;
  return d;
}

LaurentMatrix rhs_of_identity(const CompactDecomposition& d) {
  const std::size_t r = d.normal_rank;
  const LaurentMatrix& mr = d.Mr_hat;
  const int count = static_cast<int>(mr.count());
  const int lo = d.sigma.front();
  const int hi = mr.exact() ? d.sigma.back() + count - 1
                            : d.sigma.front() + count - 1;
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) {
    ComplexMatrix c(d.rows, r);
    for (std::size_t j = 0; j < r; ++j) {
      const int t = k - d.sigma[j];
      if (t >= 0 && t < count) {
        for (std::size_t i = 0; i < d.rows; ++i) {
          c(i, j) = mr.coeff(static_cast<std::size_t>(t))(i, j);
        }
      }
    }
    coeffs.push_back(std::move(c));
  }
  return LaurentMatrix(d.point, lo, std::move(coeffs), mr.exact());
}

ResidualReport residual_report(const LaurentMatrix& m,
                               const CompactDecomposition& d) {
  ResidualReport report;
  report.norm_input = frob_norm(m);
  report.norm_N = d.diagnostics.norm_N;
  if (d.empty()) return report;
  if (m.point() != d.point) {
    raise(ErrorCode::PointMismatch, "residual_report: expansion points differ");
  }
  const LaurentMatrix lhs = mul(m, d.Nr);
  const LaurentMatrix rhs = rhs_of_identity(d);
  const LaurentMatrix res = lin_comb(Complex{1.0}, lhs, Complex{-1.0}, rhs);
  report.res_rel =
      report.norm_input > 0.0 ? frob_norm(res) / report.norm_input : 0.0;
  return report;
}

RootVectorSet extract_root_vectors(const CompactDecomposition& d) {
  std::size_t first = d.normal_rank;
  for (std::size_t i = 0; i < d.sigma.size(); ++i) {
    if (d.sigma[i] >= 1) {
      first = i;
      break;
    }
  }
  if (first == d.normal_rank) {
    raise(ErrorCode::NoZeroAtPoint,
          "extract_root_vectors: no structural index >= 1 at this point");
  }

  RootVectorSet set;
  set.first = first;
  const std::size_t width = d.normal_rank - first;
  for (std::size_t i = first; i < d.normal_rank; ++i) {
    RootVector rv;
    rv.sigma = d.sigma[i];
    rv.x = PolyMatrix(slice_cols(d.Nr, i, 1));
    rv.v = slice_cols(d.Mr_hat, i, 1);
    set.entries.push_back(std::move(rv));
  }
  const ComplexMatrix x0 =
      d.Nr.coeff(0).block(0, first, d.cols, width);
  const ComplexMatrix v0 =
      d.Mr_hat.coeff(0).block(0, first, d.rows, width);
  set.x_rank_ok = numerical_rank(x0).rank == width;
  set.v_rank_ok = numerical_rank(v0).rank == width;
  return set;
}

}  // namespace smimc
