#include <doctest.h>

#include "smimc/errors.hpp"
#include "smimc/harness.hpp"
#include "smimc/toeplitz.hpp"
#include "support.hpp"

using namespace smimc;
using namespace testsupport;

TEST_SUITE("toeplitz_oracle") {

TEST_CASE("build_toeplitz: single block at the lowest order") {
  TestRng rng(2);
  const LaurentMatrix m(Complex{}, -2,
                        {random_matrix(rng, 2, 3), random_matrix(rng, 2, 3)});
  const ComplexMatrix t = build_toeplitz(m, -2);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  CHECK(mat_diff(t, m.coeff(0)) == 0.0);
}

TEST_CASE("build_toeplitz: diag(1, lambda) at k = 1") {
  const PolyMatrix d = diag_poly(2, 2, {0, 1});
  const ComplexMatrix t = build_toeplitz(d, 1);
  REQUIRE(t.rows() == 4);
  REQUIRE(t.cols() == 4);
  const ComplexMatrix expected = ComplexMatrix::from_rows({
      {1.0, 0.0, 0.0, 0.0},
      {0.0, 0.0, 0.0, 1.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 0.0, 0.0, 0.0},
  });
  CHECK(mat_diff(t, expected) == 0.0);
}

TEST_CASE("build_toeplitz: matches the naive builder") {
  TestRng rng(19);
  for (int lowest : {0, -1, -2}) {
    std::vector<ComplexMatrix> coeffs;
    for (int t = 0; t < 3; ++t) coeffs.push_back(random_matrix(rng, 2, 3));
    const LaurentMatrix m(Complex{}, lowest, std::move(coeffs));
    for (int k = lowest; k <= lowest + 4; ++k) {
      CHECK(mat_diff(build_toeplitz(m, k), naive_toeplitz(m, k)) == 0.0);
    }
  }
}

TEST_CASE("build_toeplitz: truncated series window") {
  const LaurentMatrix m(Complex{}, 0,
                        {ComplexMatrix::identity(2), ComplexMatrix::identity(2)},
                        false);
  CHECK_NOTHROW(build_toeplitz(m, 1));
  CHECK_THROWS_AS(build_toeplitz(m, 2), Error);
}

TEST_CASE("oracle_profile: identity") {
  const ToeplitzProfile p = oracle_profile(LaurentMatrix::identity(2), 2);
  CHECK(p.complete);
  CHECK(p.d_prime == 0);
  CHECK(p.ranks == std::vector<std::size_t>{2});
  CHECK(p.rho == std::vector<std::size_t>{2});
  CHECK(p.indices() == std::vector<int>{0, 0});
}

TEST_CASE("oracle_profile: Jordan-type block") {
  const ToeplitzProfile p = oracle_profile(jordan_block_2x2(), 2);
  CHECK(p.ranks == std::vector<std::size_t>{1, 2, 4});
  CHECK(p.rho == std::vector<std::size_t>{1, 1, 2});
  CHECK(p.e == std::vector<std::size_t>{1, 0, 1});
  CHECK(p.indices() == std::vector<int>{0, 2});
  CHECK(p.d_prime == 2);
}

TEST_CASE("oracle_profile: pole and zero") {
  // diag(lambda^-1, lambda)
  std::vector<ComplexMatrix> coeffs(3, ComplexMatrix(2, 2));
  coeffs[0](0, 0) = 1.0;
  coeffs[2](1, 1) = 1.0;
  const LaurentMatrix r(Complex{}, -1, std::move(coeffs));
  const ToeplitzProfile p = oracle_profile(r, 2);
  CHECK(p.lowest == -1);
  CHECK(p.indices() == std::vector<int>{-1, 1});
}

TEST_CASE("oracle_profile: errors") {
  CHECK_THROWS_AS(oracle_profile(LaurentMatrix::identity(2), 0), Error);

  // normal rank overestimated: increments can never reach r
  ComplexMatrix low(2, 2);
  low(0, 0) = 1.0;
  try {
    oracle_profile(LaurentMatrix::constant(low), 2);
    FAIL("expected MaxOrderExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxOrderExceeded);
  }

  // truncated window too short for diag(1, lambda^3) at r = 2
  std::vector<ComplexMatrix> coeffs(3, ComplexMatrix(2, 2));
  coeffs[0](0, 0) = 1.0;
  const LaurentMatrix trunc(Complex{}, 0, std::move(coeffs), false);
  try {
    oracle_profile(trunc, 2);
    FAIL("expected InsufficientSeriesOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSeriesOrder);
  }
}

TEST_CASE("indices_from_profile: frozen examples") {
  ToeplitzProfile p;
  p.complete = true;
  p.normal_rank = 3;
  p.e = {1, 1, 0, 1};
  CHECK(indices_from_profile(p, 0) == std::vector<int>{0, 1, 3});

  ToeplitzProfile q;
  q.complete = true;
  q.normal_rank = 2;
  q.e = {1, 0, 1};
  CHECK(indices_from_profile(q, 1) == std::vector<int>{-1, 1});

  ToeplitzProfile flat;
  flat.complete = true;
  flat.normal_rank = 4;
  flat.e = {4};
  CHECK(indices_from_profile(flat, 0) == std::vector<int>{0, 0, 0, 0});

  ToeplitzProfile incomplete;
  CHECK_THROWS_AS(indices_from_profile(incomplete, 0), Error);
}

TEST_CASE("oracle recovers planted indices on random instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    InstanceSpec spec;
    spec.m = 2 + seed % 5;
    spec.n = 2 + (seed * 7) % 5;
    spec.r = 1 + seed % std::min(spec.m, spec.n);
    spec.exponents.clear();
    TestRng rng(seed * 31);
    int prev = 0;
    for (std::size_t j = 0; j < spec.r; ++j) {
      prev += static_cast<int>(rng.index(3));
      spec.exponents.push_back(std::min(prev, 4));
    }
    spec.transform_degree = rng.index(5);
    spec.seed = seed;
    const GeneratedInstance inst = gen_instance(spec);
    const ToeplitzProfile p = oracle_profile(inst.P, spec.r);
    CHECK(p.indices() == inst.planted);
    for (std::size_t t = 1; t < p.rho.size(); ++t) {
      CHECK(p.rho[t] >= p.rho[t - 1]);
    }
  }
}

}  // TEST_SUITE
