#pragma once

#include <vector>

#include "smimc/polymat.hpp"

namespace smimc {

/// Brute-force reference profile: ranks of the explicitly built block
/// Toeplitz matrices and the index multiplicities they imply. Entry t of
/// every list corresponds to order k = lowest + t of the input series.
struct ToeplitzProfile {
  int lowest = 0;
  std::size_t normal_rank = 0;
  std::vector<std::size_t> ranks;  // r_k
  std::vector<std::size_t> rho;    // r_k - r_{k-1}
  std::vector<std::size_t> e;      // rho_k - rho_{k-1}
  std::size_t d_prime = 0;         // scaled stop order (t at which rho == r)
  bool complete = false;

  /// Structural indices implied by the multiplicities (sorted, length r).
  std::vector<int> indices() const;
};

/// Upper block-triangular T_k built from the coefficient window: block (p,q)
/// is the coefficient of order lowest + q - p for q >= p, zero below.
ComplexMatrix build_toeplitz(const LaurentMatrix& m, int k);

/// Rank the T_k directly for increasing k until the increment reaches r.
/// Deliberately naive: no recursion, shared tolerance policy with densela.
ToeplitzProfile oracle_profile(const LaurentMatrix& m, std::size_t r,
                               Tolerance tol = {}, std::size_t max_order = 0);

/// Multiset {(i - ell) with multiplicity e_i} over the scaled index i,
/// sorted nondecreasing.
std::vector<int> indices_from_profile(const ToeplitzProfile& p,
                                      std::size_t ell);

}  // namespace smimc
