#include "smimc/toeplitz.hpp"

#include <algorithm>

#include "smimc/errors.hpp"

namespace smimc {

std::vector<int> ToeplitzProfile::indices() const {
  if (!complete) {
    raise(ErrorCode::IncompleteProfile,
          "ToeplitzProfile::indices: rank increments never reached r");
  }
  std::vector<int> out;
  out.reserve(normal_rank);
  for (std::size_t t = 0; t < e.size(); ++t) {
    for (std::size_t c = 0; c < e[t]; ++c) {
      out.push_back(static_cast<int>(t) + lowest);
    }
  }
  return out;
}

ComplexMatrix build_toeplitz(const LaurentMatrix& m, int k) {
  if (k < m.lowest()) {
    raise(ErrorCode::DimensionMismatch, "build_toeplitz: k below lowest order");
  }
  if (!m.exact() && k > m.highest()) {
    raise(ErrorCode::InsufficientSeriesOrder,
          "build_toeplitz: window shorter than requested order");
  }
  const std::size_t nb = static_cast<std::size_t>(k - m.lowest()) + 1;
  ComplexMatrix t(m.rows() * nb, m.cols() * nb);
  for (std::size_t p = 0; p < nb; ++p) {
    for (std::size_t q = p; q < nb; ++q) {
      const int order = m.lowest() + static_cast<int>(q - p);
      t.set_block(m.rows() * p, m.cols() * q, m.coeff_at_order(order));
    }
  }
  return t;
}

ToeplitzProfile oracle_profile(const LaurentMatrix& m, std::size_t r,
                               Tolerance tol, std::size_t max_order) {
  if (r == 0) {
    raise(ErrorCode::IncompleteProfile, "oracle_profile: normal rank must be >= 1");
  }
  ToeplitzProfile profile;
  profile.lowest = m.lowest();
  profile.normal_rank = r;

  const std::size_t window = m.count();
  if (max_order == 0) {
    if (m.exact()) {
      // Determinant-degree bound on the largest scaled index.
      const std::size_t ell =
          m.lowest() < 0 ? static_cast<std::size_t>(-m.lowest()) : 0;
      max_order = ell + std::min(m.rows(), m.cols()) * (window - 1) + 1;
    } else {
      max_order = window - 1;
    }
  }

  for (std::size_t t = 0;; ++t) {
    if (!m.exact() && t >= window) {
      raise(ErrorCode::InsufficientSeriesOrder,
            "oracle_profile: series window exhausted before the rank "
            "increment reached r");
    }
    if (t > max_order) {
      raise(ErrorCode::MaxOrderExceeded,
            "oracle_profile: rank increment never reached r (wrong normal "
            "rank or tolerance too tight)");
    }
    const ComplexMatrix tk =
        build_toeplitz(m, m.lowest() + static_cast<int>(t));
    const std::size_t rank = numerical_rank(tk, tol).rank;
    const std::size_t prev_rank = t == 0 ? 0 : profile.ranks.back();
    const std::size_t prev_rho = t == 0 ? 0 : profile.rho.back();
    if (rank < prev_rank) {
      raise(ErrorCode::RankDecrease, "oracle_profile: Toeplitz rank decreased");
    }
    const std::size_t rho = rank - prev_rank;
    if (rho < prev_rho) {
      raise(ErrorCode::RankDecrease,
            "oracle_profile: rank increments decreased");
    }
    if (rho > r) {
      raise(ErrorCode::MaxOrderExceeded,
            "oracle_profile: rank increment exceeded r (normal rank "
            "underestimated)");
    }
    profile.ranks.push_back(rank);
    profile.rho.push_back(rho);
    profile.e.push_back(rho - prev_rho);
    if (rho == r) {
      profile.d_prime = t;
      profile.complete = true;
      break;
    }
  }
  return profile;
}

std::vector<int> indices_from_profile(const ToeplitzProfile& p,
                                      std::size_t ell) {
  if (!p.complete) {
    raise(ErrorCode::IncompleteProfile,
          "indices_from_profile: rank increments never reached r");
  }
  std::vector<int> out;
  out.reserve(p.normal_rank);
  for (std::size_t t = 0; t < p.e.size(); ++t) {
    for (std::size_t c = 0; c < p.e[t]; ++c) {
      out.push_back(static_cast<int>(t) - static_cast<int>(ell));
    }
  }
  return out;
}

}  // namespace smimc
