#pragma once

#include <cstdint>
#include <vector>

#include "smimc/polymat.hpp"

namespace smimc {

struct SearchOptions {
  Tolerance tol{};
  /// Upper bound on the number of rank-search steps; 0 picks the
  /// determinant-degree bound for exact input and the valid window for
  /// truncated input.
  std::size_t max_order = 0;
  /// Floor every per-step compression cutoff at the scale of the initial
  /// constant block instead of the current one (for ill-scaled inputs).
  bool global_scale = false;
};

/// One step of the rank search: the factored column transformation
/// N_i = [[I, Z*Q], [0, Q]] at partition (rank_before | nullity before),
/// plus whether the trailing columns were divided by (lambda - point)
/// afterwards (every step except the stopping one).
struct StepRecord {
  std::size_t index = 0;
  std::size_t rank_before = 0;  // frozen columns going in
  std::size_t rank_after = 0;   // frozen columns coming out
  std::size_t nullity = 0;      // cols - rank_after
  ComplexMatrix Z;              // rank_before x (cols - rank_before)
  ComplexMatrix Q;              // unitary, (cols - rank_before)^2
  bool shifted = false;

  std::size_t added() const noexcept { return rank_after - rank_before; }
};

struct RankSearchTrace {
  Complex point{};
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t normal_rank = 0;
  std::size_t d_prime = 0;
  std::vector<StepRecord> steps;
  /// Transformed coefficient stack after the stopping step; constant term is
  /// [L0 | 0] with L0 of full column rank normal_rank.
  std::vector<ComplexMatrix> final_stack;
  /// Leading coefficients of final_stack that are trustworthy (everything
  /// for exact input, window - d_prime for truncated input).
  std::size_t valid_count = 0;
  bool exact = true;
  /// c[j]: how many (lambda - point) divisions column j absorbed; equals the
  /// scaled structural index of column j for j < normal_rank.
  std::vector<std::size_t> col_shifts;

  std::vector<std::size_t> rho() const;
};

/// Recursive Toeplitz rank search with tracked transformations on a series
/// normalized to lowest == 0. r is the normal rank (1 <= r <= min(m,n)).
RankSearchTrace search(const LaurentMatrix& m, std::size_t r,
                       const SearchOptions& options = {});

/// Replay one recorded step on a coefficient stack: the column operation on
/// every coefficient, then the trailing shift when the step recorded one.
void apply_step_to_stack(std::vector<ComplexMatrix>& stack,
                         const StepRecord& step);

/// Largest numerical rank of the function evaluated at `trials` random
/// points on the annulus of radii [0.5, 2] about the expansion point.
/// Deterministic for a given seed.
std::size_t estimate_normal_rank(const LaurentMatrix& m, std::size_t trials,
                                 Tolerance tol = {},
                                 std::uint64_t seed = 0x5eed5eedULL);

}  // namespace smimc
