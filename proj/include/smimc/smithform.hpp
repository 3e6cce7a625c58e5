#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smimc/ranksearch.hpp"

namespace smimc {

struct Diagnostics {
  double res_rel = 0.0;
  double norm_input = 0.0;
  double norm_N = 0.0;
  std::vector<std::size_t> rho;
};

/// R(lambda) * Nr(lambda) == Mr_hat(lambda) * diag((lambda-point)^sigma_i)
/// on the valid window. sigma is nondecreasing; column i of Nr / Mr_hat
/// carries sigma[i] directly (the search freezes columns in index order).
struct CompactDecomposition {
  Complex point{};
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t normal_rank = 0;
  int ell = 0;             // pole order used for the Laurent scaling
  std::size_t d_prime = 0; // scaled stop order (= max sigma + ell)
  std::vector<int> sigma;  // structural indices, nondecreasing, length r
  std::vector<std::size_t> e;  // multiplicities over scaled index 0..d_prime
  PolyMatrix Nr;               // n x r, polynomial about `point`
  LaurentMatrix Mr_hat;        // m x r, lowest 0; truncated for inexact input
  std::optional<PolyMatrix> N_full;  // n x n unimodular factor, on request
  Diagnostics diagnostics;

  bool empty() const noexcept { return normal_rank == 0; }
  /// Diagonal exponents of Lambda_(r); identical to sigma.
  const std::vector<int>& lambda_exponents() const noexcept { return sigma; }
};

struct DecomposeOptions {
  /// Normal rank if known; estimated from random samples otherwise.
  std::optional<std::size_t> normal_rank;
  Tolerance tol{};
  std::size_t max_order = 0;
  bool emit_full_n = false;
  bool global_scale = false;
  std::size_t rank_trials = 5;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Full pipeline: trim, pole scaling, rank search, unimodular assembly,
/// index shift. A zero function yields an empty decomposition (r = 0).
CompactDecomposition decompose(const LaurentMatrix& m,
                               const DecomposeOptions& options = {});

/// N(lambda) from a completed trace: the product of the factored step
/// transformations conjugated by the accumulated monomial scalings. The
/// result is unimodular of degree <= d_prime.
PolyMatrix assemble_unimodular(const RankSearchTrace& trace);

struct RootVector {
  int sigma = 0;
  PolyMatrix x;      // n x 1 polynomial, R(lambda) x = v (lambda-point)^sigma
  LaurentMatrix v;   // m x 1, v(point) != 0
};

struct RootVectorSet {
  std::size_t first = 0;  // 0-based threshold: smallest i with sigma[i] >= 1
  std::vector<RootVector> entries;
  bool x_rank_ok = false;  // [x_j(point) ... x_r(point)] full column rank
  bool v_rank_ok = false;  // [v_j(point) ... v_r(point)] full column rank
};

/// Columns of Nr / Mr_hat paired with the positive structural indices.
/// NoZeroAtPoint when no sigma_i >= 1 exists.
RootVectorSet extract_root_vectors(const CompactDecomposition& d);

struct ResidualReport {
  double res_rel = 0.0;
  double norm_input = 0.0;
  double norm_N = 0.0;
};

/// || R*Nr - Mr_hat*Lambda ||_F / ||R||_F over the stacked coefficients of
/// the valid window.
ResidualReport residual_report(const LaurentMatrix& m,
                               const CompactDecomposition& d);

/// Mr_hat with column i scaled by (lambda-point)^sigma[i] (the right-hand
/// side of the decomposition identity).
LaurentMatrix rhs_of_identity(const CompactDecomposition& d);

}  // namespace smimc
