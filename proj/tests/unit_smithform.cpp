#include <doctest.h>

#include <cmath>
#include <limits>

#include "smimc/errors.hpp"
#include "smimc/harness.hpp"
#include "smimc/smithform.hpp"
#include "support.hpp"

using namespace smimc;
using namespace testsupport;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double root_vector_residual(const LaurentMatrix& r, const RootVector& rv) {
  const LaurentMatrix lhs = mul(r, rv.x);
  const LaurentMatrix rhs = rv.v.with_lowest(rv.v.lowest() + rv.sigma);
  return frob_norm(lin_comb(Complex{1.0}, lhs, Complex{-1.0}, rhs)) /
         (frob_norm(r) * frob_norm(rv.x));
}

double det_spread(const PolyMatrix& n, Complex point, TestRng& rng) {
  std::vector<Complex> dets;
  for (int t = 0; t < 10; ++t) {
    const double radius = rng.uniform(0.5, 2.0);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    const Complex z =
        point + Complex{radius * std::cos(angle), radius * std::sin(angle)};
    dets.push_back(determinant(eval(n, z)));
  }
  double max_abs = 0.0, max_diff = 0.0;
  for (const Complex& a : dets) max_abs = std::max(max_abs, std::abs(a));
  for (const Complex& a : dets) {
    for (const Complex& b : dets) max_diff = std::max(max_diff, std::abs(a - b));
  }
  return max_abs > 0.0 ? max_diff / max_abs : 1.0;
}
}  // namespace

TEST_SUITE("smithform") {

TEST_CASE("decompose: planted diagonal (0,1,3)") {
  const PolyMatrix p = diag_poly(3, 3, {0, 1, 3});
  DecomposeOptions opts;
  opts.emit_full_n = true;
  const CompactDecomposition d = decompose(p, opts);
  CHECK(d.normal_rank == 3);
  CHECK(d.sigma == std::vector<int>{0, 1, 3});
  CHECK(d.ell == 0);
  CHECK(d.d_prime == 3);
  CHECK(d.diagnostics.res_rel <= 100.0 * kEps);
  CHECK(numerical_rank(d.Mr_hat.coeff(0)).rank == 3);
  REQUIRE(d.N_full.has_value());
  CHECK(numerical_rank(d.N_full->coeff(0)).rank == 3);
  CHECK(d.lambda_exponents() == d.sigma);
}

TEST_CASE("decompose: coalescent pole and zero") {
  std::vector<ComplexMatrix> coeffs(3, ComplexMatrix(2, 2));
  coeffs[0](0, 0) = 1.0;
  coeffs[2](1, 1) = 1.0;
  const LaurentMatrix r(Complex{}, -1, std::move(coeffs));
  const CompactDecomposition d = decompose(r);
  CHECK(d.sigma == std::vector<int>{-1, 1});
  CHECK(d.ell == 1);
  CHECK(d.diagnostics.res_rel <= 100.0 * kEps);
}

TEST_CASE("decompose: identity at a nonzero point") {
  const Complex point{0.5, 0.25};
  const CompactDecomposition d =
      decompose(LaurentMatrix::identity(3, point));
  CHECK(d.normal_rank == 3);
  CHECK(d.sigma == std::vector<int>{0, 0, 0});
  CHECK(d.d_prime == 0);
  CHECK(d.point == point);
  CHECK(mat_diff(d.Nr.coeff(0) * d.Nr.coeff(0).adjoint(),
                 ComplexMatrix::identity(3)) <= 1e-13);
}

TEST_CASE("decompose: zero function") {
  const CompactDecomposition d = decompose(LaurentMatrix::zero(2, 3));
  CHECK(d.empty());
  CHECK(d.normal_rank == 0);
  CHECK(d.sigma.empty());
  CHECK(d.Nr.cols() == 0);
  CHECK(d.Mr_hat.cols() == 0);
}

TEST_CASE("decompose: wrong fixed rank propagates the search error") {
  CHECK_THROWS_AS(
      [] {
        DecomposeOptions opts;
        opts.normal_rank = 2;
        ComplexMatrix low(2, 2);
        low(0, 0) = 1.0;
        return decompose(LaurentMatrix::constant(low), opts);
      }(),
      Error);
}

TEST_CASE("assemble_unimodular: constant for d' = 0") {
  const RankSearchTrace trace = search(LaurentMatrix::identity(2), 2);
  const PolyMatrix n = assemble_unimodular(trace);
  CHECK(n.degree() == 0);
  CHECK(numerical_rank(n.coeff(0)).rank == 2);

  RankSearchTrace incomplete = trace;
  incomplete.steps.clear();
  CHECK_THROWS_AS(assemble_unimodular(incomplete), Error);
}

TEST_CASE("assemble_unimodular: Jordan-type block factorization") {
  const PolyMatrix p = jordan_block_2x2();
  DecomposeOptions opts;
  opts.emit_full_n = true;
  const CompactDecomposition d = decompose(p, opts);
  CHECK(d.sigma == std::vector<int>{0, 2});

  REQUIRE(d.N_full.has_value());
  const PolyMatrix& n = *d.N_full;
  CHECK(n.degree() <= static_cast<int>(d.d_prime));
  TestRng rng(40);
  CHECK(det_spread(n, d.point, rng) <= 1e-12);

  // P(l) N(l) agrees with Mr_hat(l) Lambda(l) at sample points
  for (int t = 0; t < 5; ++t) {
    const Complex z = rng.cnormal();
    const ComplexMatrix lhs = eval(p, z) * eval(d.Nr, z);
    const ComplexMatrix rhs = eval(rhs_of_identity(d), z);
    CHECK(mat_diff(lhs, rhs) <= 1e-12 * (1.0 + lhs.frob_norm()));
  }
}

TEST_CASE("assemble_unimodular: norm reported for generated instances") {
  InstanceSpec spec;
  spec.exponents = {0, 1, 3};
  spec.seed = 21;
  const GeneratedInstance inst = gen_instance(spec);
  DecomposeOptions opts;
  opts.normal_rank = 3;
  const CompactDecomposition d = decompose(inst.P, opts);
  CHECK(d.diagnostics.norm_N > 0.0);
  CHECK(std::isfinite(d.diagnostics.norm_N));
}

TEST_CASE("extract_root_vectors: diag(1, lambda)") {
  const CompactDecomposition d = decompose(diag_poly(2, 2, {0, 1}));
  const RootVectorSet set = extract_root_vectors(d);
  CHECK(set.first == 1);
  REQUIRE(set.entries.size() == 1);
  const RootVector& rv = set.entries[0];
  CHECK(rv.sigma == 1);
  CHECK(std::abs(rv.x.coeff(0)(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(rv.x.coeff(0)(0, 0)) <= 1e-14);
  CHECK(root_vector_residual(diag_poly(2, 2, {0, 1}), rv) <= 1e-12);
  CHECK(set.x_rank_ok);
  CHECK(set.v_rank_ok);
}

TEST_CASE("extract_root_vectors: order-2 root polynomial") {
  const PolyMatrix p = jordan_block_2x2();
  const CompactDecomposition d = decompose(p);
  const RootVectorSet set = extract_root_vectors(d);
  REQUIRE(set.entries.size() == 1);
  CHECK(set.entries[0].sigma == 2);
  CHECK(root_vector_residual(p, set.entries[0]) <= 1e-12);
  // v(point) must be nonzero for a root vector
  CHECK(set.entries[0].v.coeff(0).frob_norm() > 0.1);
}

TEST_CASE("extract_root_vectors: no zero at the point") {
  CHECK_THROWS_AS(extract_root_vectors(decompose(LaurentMatrix::identity(2))),
                  Error);
  // pure pole
  std::vector<ComplexMatrix> coeffs(1, ComplexMatrix(1, 1));
  coeffs[0](0, 0) = 1.0;
  const LaurentMatrix pole(Complex{}, -2, std::move(coeffs));
  try {
    extract_root_vectors(decompose(pole));
    FAIL("expected NoZeroAtPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoZeroAtPoint);
  }
}

TEST_CASE("residual_report: exact diagonal input") {
  const PolyMatrix p = diag_poly(3, 4, {0, 2, 2});
  const CompactDecomposition d = decompose(p);
  const ResidualReport report = residual_report(p, d);
  CHECK(report.res_rel <= 100.0 * kEps);
  CHECK(report.norm_input == doctest::Approx(frob_norm(p)));
}

TEST_CASE("residual_report: generated instances stay accurate") {
  InstanceSpec spec;
  spec.exponents = {0, 1, 3};
  spec.seed = 21;
  DecomposeOptions opts;
  opts.normal_rank = 3;
  const GeneratedInstance t1 = gen_instance(spec);
  CHECK(residual_report(t1.P, decompose(t1.P, opts)).res_rel <= 1e-12);

  InstanceSpec spec2;
  spec2.exponents = {0, 11, 12};
  spec2.transform_degree = 10;
  spec2.seed = 21;
  const GeneratedInstance t2 = gen_instance(spec2);
  CHECK(residual_report(t2.P, decompose(t2.P, opts)).res_rel <= 1e-11);
}

TEST_CASE("shift equivariance of the structural indices") {
  InstanceSpec spec;
  spec.m = 3;
  spec.n = 4;
  spec.exponents = {0, 2, 2};
  spec.seed = 13;
  const GeneratedInstance inst = gen_instance(spec);
  DecomposeOptions opts;
  opts.normal_rank = 3;
  const std::vector<int> base = decompose(inst.P, opts).sigma;
  for (int s = -2; s <= 2; ++s) {
    const LaurentMatrix shifted = inst.P.with_lowest(inst.P.lowest() + s);
    const std::vector<int> sigma = decompose(shifted, opts).sigma;
    REQUIRE(sigma.size() == base.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      CHECK(sigma[j] == base[j] + s);
    }
  }
}

TEST_CASE("decompose: truncated rational input") {
  // exact instance re-marked as a truncated window
  InstanceSpec spec;
  spec.exponents = {0, 1, 2};
  spec.seed = 3;
  const GeneratedInstance inst = gen_instance(spec);
  const LaurentMatrix window(inst.P.point(), -1,
                             [&] {
                               std::vector<ComplexMatrix> c;
                               for (std::size_t t = 0; t < inst.P.count(); ++t) {
                                 c.push_back(inst.P.coeff(t));
                               }
                               return c;
                             }(),
                             false);
  DecomposeOptions opts;
  opts.normal_rank = 3;
  const CompactDecomposition d = decompose(window, opts);
  CHECK(d.sigma == std::vector<int>{-1, 0, 1});
  CHECK_FALSE(d.Mr_hat.exact());
  CHECK(d.Mr_hat.count() == window.count() - d.d_prime);
  CHECK(d.diagnostics.res_rel <= 1e-10);
}

TEST_CASE("decompose: left-invertibility and unimodularity on randoms") {
  TestRng rng(91);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    InstanceSpec spec;
    spec.m = 2 + seed % 4;
    spec.n = 2 + (seed * 3) % 4;
    spec.r = 1 + seed % std::min(spec.m, spec.n);
    spec.exponents.clear();
    int prev = 0;
    for (std::size_t j = 0; j < spec.r; ++j) {
      prev += static_cast<int>(rng.index(3));
      spec.exponents.push_back(std::min(prev, 4));
    }
    spec.transform_degree = 1 + rng.index(3);
    spec.seed = seed * 101;
    const GeneratedInstance inst = gen_instance(spec);
    DecomposeOptions opts;
    opts.normal_rank = spec.r;
    opts.emit_full_n = true;
    const CompactDecomposition d = decompose(inst.P, opts);
    CHECK(d.sigma == inst.planted);
    CHECK(numerical_rank(d.Mr_hat.coeff(0)).rank == spec.r);
    CHECK(numerical_rank(d.N_full->coeff(0)).rank == spec.n);
    CHECK(det_spread(*d.N_full, d.point, rng) <= 1e-8);
    CHECK(d.diagnostics.res_rel <= 1e-10);
  }
}

}  // TEST_SUITE
