#include "smimc/ranksearch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smimc/errors.hpp"
#include "smimc/kernels.hpp"

namespace smimc {

namespace {

void apply_column_mix(std::vector<ComplexMatrix>& stack, std::size_t frozen,
                      const ComplexMatrix& z) {
  // trailing columns += frozen columns * Z, on every coefficient
  const std::size_t rows = stack.front().rows();
  const std::size_t nu = z.cols();
  for (ComplexMatrix& c : stack) {
    for (std::size_t jj = 0; jj < nu; ++jj) {
      for (std::size_t kk = 0; kk < frozen; ++kk) {
        kernels::axpy(rows, z(kk, jj), c.col(kk), c.col(frozen + jj));
      }
    }
  }
}

void apply_trailing_unitary(std::vector<ComplexMatrix>& stack,
                            std::size_t frozen, const ComplexMatrix& q) {
  const std::size_t rows = stack.front().rows();
  const std::size_t nu = q.rows();
  if (nu == 0) return;
  for (ComplexMatrix& c : stack) {
    const ComplexMatrix b = c.block(0, frozen, rows, nu) * q;
    c.set_block(0, frozen, b);
  }
}

// Divide the trailing columns by (lambda - point): constant block dropped,
// coefficients shifted down one order, zero fill at the top.
void shift_trailing(std::vector<ComplexMatrix>& stack, std::size_t from) {
  const std::size_t rows = stack.front().rows();
  const std::size_t cols = stack.front().cols();
  for (std::size_t t = 0; t + 1 < stack.size(); ++t) {
    for (std::size_t j = from; j < cols; ++j) {
      std::copy_n(stack[t + 1].col(j), rows, stack[t].col(j));
    }
  }
  ComplexMatrix& top = stack.back();
  for (std::size_t j = from; j < cols; ++j) {
    std::fill_n(top.col(j), rows, Complex{});
  }
}

}  // namespace

std::vector<std::size_t> RankSearchTrace::rho() const {
  std::vector<std::size_t> out;
  out.reserve(steps.size());
  for (const StepRecord& s : steps) out.push_back(s.rank_after);
  return out;
}

RankSearchTrace search(const LaurentMatrix& input, std::size_t r,
                       const SearchOptions& options) {
  const LaurentMatrix m =
      input.lowest() == 0 ? input : input.with_lowest(0);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (r == 0 || r > std::min(rows, cols)) {
    raise(ErrorCode::DimensionMismatch,
          "search: normal rank outside [1, min(m,n)]");
  }
  if (!m.all_finite()) {
    raise(ErrorCode::NonFiniteInput, "search: NaN/Inf coefficient");
  }
  const std::size_t window = m.count();

  std::size_t max_order = options.max_order;
  if (max_order == 0) {
    max_order = m.exact() ? std::min(rows, cols) * (window - 1) + 1
                          : window - 1;
  }

  std::vector<ComplexMatrix> stack;
  stack.reserve(window);
  for (std::size_t t = 0; t < window; ++t) stack.push_back(m.coeff(t));

  const double rel = options.tol.resolved_rel(rows, cols);
  double global_ref = 0.0;
  if (options.global_scale) {
    for (const ComplexMatrix& c : stack) {
      global_ref = std::max(global_ref, c.frob_norm());
    }
  }

  RankSearchTrace trace;
  trace.point = m.point();
  trace.rows = rows;
  trace.cols = cols;
  trace.normal_rank = r;
  trace.exact = m.exact();

  // Scale of the largest non-orthogonal elimination performed so far; the
  // working stack carries roundoff of order eps times this, which must stay
  // below every later rank cutoff.
  double acc_elim = 0.0;

  std::size_t frozen = 0;
  for (std::size_t i = 0;; ++i) {
    if (!m.exact() && i >= window) {
      raise(ErrorCode::InsufficientSeriesOrder,
            "search: series window exhausted before the rank reached r");
    }
    if (i > max_order) {
      raise(ErrorCode::MaxOrderExceeded,
            "search: rank never reached r within max_order (wrong normal "
            "rank or insufficient tolerance separation)");
    }

    const std::size_t nu_prev = cols - frozen;
    const ComplexMatrix lead = stack.front();

    // Rank decisions are made against the compound [L0 | R] block: an
    // all-noise residual must not be counted as new rank.
    const SvdResult compound = jacobi_svd(lead, false);
    double sigma_ref = compound.sigma.empty() ? 0.0 : compound.sigma[0];
    if (options.global_scale) sigma_ref = std::max(sigma_ref, global_ref);

    StepRecord step;
    step.index = i;
    step.rank_before = frozen;
    step.Z = ComplexMatrix(frozen, nu_prev);
    if (frozen > 0) {
      const ComplexMatrix l = lead.block(0, 0, rows, frozen);
      if (numerical_rank(l, options.tol).rank < frozen) {
        raise(ErrorCode::RankDecrease,
              "search: frozen block lost rank at the current tolerance");
      }
      ComplexMatrix neg_r = lead.block(0, frozen, rows, nu_prev);
      neg_r *= Complex{-1.0};
      step.Z = least_squares_solve(l, neg_r);
      // Hook: a single iterative-refinement pass of Z against the updated
      // residual would slot in here.
      apply_column_mix(stack, frozen, step.Z);
      acc_elim = std::max(acc_elim, l.frob_norm() * step.Z.frob_norm());
    }
    const Tolerance step_tol{
        rel, std::max({options.tol.abs, rel * sigma_ref,
                       32.0 * rel * acc_elim})};

    const ComplexMatrix residual = stack.front().block(0, frozen, rows, nu_prev);
    const Compression comp = column_compress(residual, step_tol);
    step.Q = comp.Q;
    step.rank_after = frozen + comp.rank;
    step.nullity = cols - step.rank_after;
    if (step.rank_after > r) {
      raise(ErrorCode::MaxOrderExceeded,
            "search: rank exceeded the provided normal rank (r "
            "underestimated)");
    }
    apply_trailing_unitary(stack, frozen, step.Q);

    frozen = step.rank_after;
    if (frozen == r) {
      trace.d_prime = i;
      // the compression certified the trailing constants as noise below the
      // cutoff; the factorization carries them as exact zeros, like the
      // dropped constant blocks of every earlier step
      for (std::size_t j = r; j < cols; ++j) {
        std::fill_n(stack.front().col(j), rows, Complex{});
      }
      trace.steps.push_back(std::move(step));
      break;
    }
    step.shifted = true;
    shift_trailing(stack, frozen);
    trace.steps.push_back(std::move(step));
  }

  trace.final_stack = std::move(stack);
  trace.valid_count = m.exact() ? window : window - trace.d_prime;

  trace.col_shifts.assign(cols, trace.d_prime);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const StepRecord& s : trace.steps) {
      if (j < s.rank_after) {
        trace.col_shifts[j] = s.index;
        break;
      }
    }
  }
  return trace;
}

void apply_step_to_stack(std::vector<ComplexMatrix>& stack,
                         const StepRecord& step) {
  if (stack.empty()) {
    raise(ErrorCode::InsufficientSeriesOrder, "apply_step_to_stack: empty stack");
  }
  const std::size_t cols = stack.front().cols();
  if (step.rank_before + step.Q.rows() != cols ||
      step.Z.cols() != step.Q.rows()) {
    raise(ErrorCode::DimensionMismatch,
          "apply_step_to_stack: step shapes do not match the stack");
  }
  if (step.rank_before > 0) apply_column_mix(stack, step.rank_before, step.Z);
  apply_trailing_unitary(stack, step.rank_before, step.Q);
  if (step.shifted) shift_trailing(stack, step.rank_after);
}

std::size_t estimate_normal_rank(const LaurentMatrix& m, std::size_t trials,
                                 Tolerance tol, std::uint64_t seed) {
  if (m.is_zero()) return 0;
  if (trials == 0) trials = 1;

  // Raw-bit uniforms keep the sampling bitwise reproducible across library
  // implementations.
  std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
  const auto next_u01 = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };

  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double radius = 0.5 + 1.5 * next_u01();
    const double angle = 2.0 * std::numbers::pi * next_u01();
    const Complex z = m.point() + Complex{radius * std::cos(angle),
                                          radius * std::sin(angle)};
    best = std::max(best, numerical_rank(eval(m, z), tol).rank);
  }
  return best;
}

}  // namespace smimc
