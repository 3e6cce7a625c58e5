#include "smimc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "smimc/errors.hpp"

namespace smimc {

namespace {

// splitmix64 + Box-Muller: reproducible draws without depending on the
// standard library's unspecified distribution algorithms.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_normal() {
    double u1 = next_u01();
    while (u1 == 0.0) u1 = next_u01();
    const double u2 = next_u01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
};

Complex draw_entry(Rng& rng, int power, bool complex_entries) {
  const double re = std::pow(rng.next_normal(), power);
  if (!complex_entries) return Complex{re};
  return Complex{re, std::pow(rng.next_normal(), power)};
}

PolyMatrix random_poly(Rng& rng, std::size_t dim, std::size_t degree,
                       int power, bool complex_entries, Complex point) {
  std::vector<ComplexMatrix> coeffs(degree + 1, ComplexMatrix(dim, dim));
  for (ComplexMatrix& c : coeffs) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t i = 0; i < dim; ++i) {
        c(i, j) = draw_entry(rng, power, complex_entries);
      }
    }
  }
  return PolyMatrix(point, std::move(coeffs));
}

PolyMatrix planted_diagonal(const InstanceSpec& spec) {
  const int top = *std::max_element(spec.exponents.begin(),
                                    spec.exponents.end());
  std::vector<ComplexMatrix> coeffs(static_cast<std::size_t>(top) + 1,
                                    ComplexMatrix(spec.m, spec.n));
  for (std::size_t j = 0; j < spec.r; ++j) {
    coeffs[static_cast<std::size_t>(spec.exponents[j])](j, j) = 1.0;
  }
  return PolyMatrix(spec.point, std::move(coeffs));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng rng(seed ^ (salt * 0xd1342543de82ef95ULL));
  return rng.next_u64();
}

}  // namespace

GeneratedInstance gen_instance(const InstanceSpec& spec) {
  if (spec.r == 0 || spec.r > std::min(spec.m, spec.n) ||
      spec.exponents.size() != spec.r) {
    raise(ErrorCode::DimensionMismatch, "gen_instance: invalid spec");
  }
  for (std::size_t j = 0; j < spec.r; ++j) {
    if (spec.exponents[j] < 0 ||
        (j > 0 && spec.exponents[j] < spec.exponents[j - 1])) {
      raise(ErrorCode::DimensionMismatch,
            "gen_instance: exponents must be nonnegative and nondecreasing");
    }
  }

  const PolyMatrix diag = planted_diagonal(spec);
  Rng rng(mix_seed(spec.seed, 0xa11ce));
  for (int attempt = 0; attempt < 5; ++attempt) {
    PolyMatrix left(LaurentMatrix::identity(spec.m, spec.point));
    PolyMatrix right(LaurentMatrix::identity(spec.n, spec.point));
    if (!spec.identity_transforms) {
      left = random_poly(rng, spec.m, spec.transform_degree, spec.power,
                         spec.complex_entries, spec.point);
      right = random_poly(rng, spec.n, spec.transform_degree, spec.power,
                          spec.complex_entries, spec.point);
    }
    PolyMatrix p(mul(mul(left, diag), right));
    // Degenerate only on a measure-zero draw; detected by a normal-rank
    // sample disagreeing with the plant.
    if (estimate_normal_rank(p, 5, {}, rng.next_u64()) == spec.r) {
      return GeneratedInstance{std::move(p), spec.exponents};
    }
    if (spec.identity_transforms) break;  // deterministic, retry is futile
  }
  raise(ErrorCode::DegenerateDraw,
        "gen_instance: sampled normal rank kept disagreeing with the plant");
}

namespace {

TableRow run_row(const InstanceSpec& spec, int label) {
  const GeneratedInstance inst = gen_instance(spec);
  DecomposeOptions options;
  options.normal_rank = spec.r;
  const CompactDecomposition d = decompose(inst.P, options);
  TableRow row;
  row.label = label;
  row.norm_P = frob_norm(inst.P);
  row.res_rel = d.diagnostics.res_rel;
  row.norm_N = d.diagnostics.norm_N;
  row.sigma = d.sigma;
  row.indices_ok = d.sigma == inst.planted;
  return row;
}

}  // namespace

InstanceSpec table1_row_spec(int label, std::uint64_t seed,
                             bool complex_entries) {
  InstanceSpec spec;
  spec.exponents = {0, 1, 3};
  spec.transform_degree = 2;
  spec.power = label;
  spec.complex_entries = complex_entries;
  spec.seed = mix_seed(seed, 0x7ab1e100u + static_cast<std::uint64_t>(label));
  return spec;
}

InstanceSpec table2_row_spec(int label, std::uint64_t seed,
                             bool complex_entries) {
  InstanceSpec spec;
  spec.exponents = {0, label + 1, label + 2};
  spec.transform_degree = 10;
  spec.power = 1;
  spec.complex_entries = complex_entries;
  spec.seed = mix_seed(seed, 0x7ab1e200u + static_cast<std::uint64_t>(label));
  return spec;
}

std::vector<TableRow> run_table1(std::uint64_t seed, bool complex_entries) {
  std::vector<TableRow> rows;
  rows.reserve(10);
  for (int i = 1; i <= 10; ++i) {
    rows.push_back(run_row(table1_row_spec(i, seed, complex_entries), i));
  }
  return rows;
}

std::vector<TableRow> run_table2(std::uint64_t seed, bool complex_entries) {
  std::vector<TableRow> rows;
  rows.reserve(10);
  for (int k = 1; k <= 10; ++k) {
    rows.push_back(run_row(table2_row_spec(k, seed, complex_entries), k));
  }
  return rows;
}

std::string format_table(const std::vector<TableRow>& rows,
                         const char* label) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%3s   %12s   %14s   %12s   %s\n", label,
                "||P||", "||ResP||/||P||", "||N||", "indices");
  out += line;
  for (const TableRow& row : rows) {
    std::string sigma;
    for (std::size_t i = 0; i < row.sigma.size(); ++i) {
      sigma += (i ? " " : "");
      sigma += std::to_string(row.sigma[i]);
    }
    std::snprintf(line, sizeof(line), "%3d   %12.4e   %14.4e   %12.4e   %s (%s)\n",
                  row.label, row.norm_P, row.res_rel, row.norm_N,
                  row.indices_ok ? "ok" : "MISMATCH", sigma.c_str());
    out += line;
  }
  return out;
}

}  // namespace smimc
