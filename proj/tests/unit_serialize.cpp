#include <doctest.h>

#include "smimc/errors.hpp"
#include "smimc/harness.hpp"
#include "smimc/serialize.hpp"
#include "support.hpp"

using namespace smimc;
using namespace testsupport;

TEST_SUITE("serialize") {

TEST_CASE("series: round-trip is bit-identical") {
  TestRng rng(1);
  ComplexMatrix c0 = random_matrix(rng, 2, 3);
  c0(0, 0) = Complex{0.1, -0.0};
  c0(1, 2) = Complex{1e-300, 5e300};
  const LaurentMatrix m(Complex{0.25, -1.75}, -2,
                        {c0, random_matrix(rng, 2, 3)}, false);
  const std::string text = write_series(m, "shifted");
  const SeriesFileData parsed = parse_series(text);
  CHECK(parsed.basis == "shifted");
  CHECK(parsed.matrix.lowest() == -2);
  CHECK_FALSE(parsed.matrix.exact());
  CHECK(parsed.matrix.point() == m.point());
  REQUIRE(parsed.matrix.count() == m.count());
  for (std::size_t t = 0; t < m.count(); ++t) {
    CHECK(parsed.matrix.coeff(t).data() == m.coeff(t).data());
  }
  CHECK(write_series(parsed.matrix, parsed.basis) == text);
}

TEST_CASE("series: validation failures") {
  CHECK_THROWS_AS(parse_series("not json"), Error);
  CHECK_THROWS_AS(parse_series("{}"), Error);
  // monomial basis forbids poles and truncations
  const LaurentMatrix pole(Complex{}, -1, {ComplexMatrix::identity(2)});
  try {
    parse_series(write_series(pole, "monomial"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK_THROWS_AS(parse_series(write_series(pole, "diagonal")), Error);

  // ragged grid
  const std::string ragged = R"({
    "rows": 2, "cols": 2, "point": {"re": 0.0, "im": 0.0},
    "lowest": 0, "basis": "shifted", "exact": true,
    "coeffs": [{"re": [[1.0, 2.0]], "im": [[0.0, 0.0]]}]
  })";
  CHECK_THROWS_AS(parse_series(ragged), Error);
}

TEST_CASE("decomposition: round-trip preserves every field") {
  InstanceSpec spec;
  spec.exponents = {0, 1, 3};
  spec.seed = 21;
  const GeneratedInstance inst = gen_instance(spec);
  DecomposeOptions opts;
  opts.normal_rank = 3;
  opts.emit_full_n = true;
  const CompactDecomposition d = decompose(inst.P, opts);

  const std::string text = write_decomposition(d);
  const CompactDecomposition back = parse_decomposition(text);
  CHECK(back.point == d.point);
  CHECK(back.rows == d.rows);
  CHECK(back.cols == d.cols);
  CHECK(back.normal_rank == d.normal_rank);
  CHECK(back.ell == d.ell);
  CHECK(back.d_prime == d.d_prime);
  CHECK(back.sigma == d.sigma);
  CHECK(back.e == d.e);
  CHECK(back.diagnostics.rho == d.diagnostics.rho);
  CHECK(back.diagnostics.res_rel == d.diagnostics.res_rel);
  CHECK(back.diagnostics.norm_input == d.diagnostics.norm_input);
  CHECK(back.diagnostics.norm_N == d.diagnostics.norm_N);
  REQUIRE(back.N_full.has_value());
  REQUIRE(back.Nr.count() == d.Nr.count());
  for (std::size_t t = 0; t < d.Nr.count(); ++t) {
    CHECK(back.Nr.coeff(t).data() == d.Nr.coeff(t).data());
  }
  for (std::size_t t = 0; t < d.Mr_hat.count(); ++t) {
    CHECK(back.Mr_hat.coeff(t).data() == d.Mr_hat.coeff(t).data());
  }
  CHECK(write_decomposition(back) == text);
}

TEST_CASE("decomposition: malformed input") {
  CHECK_THROWS_AS(parse_decomposition("[1, 2]"), Error);
  const std::string missing = R"({"point": {"re": 0.0, "im": 0.0}})";
  CHECK_THROWS_AS(parse_decomposition(missing), Error);
}

TEST_CASE("file helpers report unreadable paths") {
  CHECK_THROWS_AS(read_series_file("/nonexistent/path.json"), Error);
  try {
    read_series_file("/nonexistent/path.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

}  // TEST_SUITE
