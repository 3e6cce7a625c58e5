// smimc: compact local Smith-McMillan forms of rational matrices from their
// Laurent coefficient stacks.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smimc/errors.hpp"
#include "smimc/harness.hpp"
#include "smimc/serialize.hpp"
#include "smimc/toeplitz.hpp"

namespace {

using namespace smimc;

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) raise(ErrorCode::ParseError, "empty complex literal");
  const auto to_double = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      raise(ErrorCode::ParseError, "bad complex literal '" + text + "'");
    }
    if (used != part.size()) {
      raise(ErrorCode::ParseError, "bad complex literal '" + text + "'");
    }
    return v;
  };
  if (s.back() != 'i' && s.back() != 'I') {
    return Complex{to_double(s), 0.0};
  }
  s.pop_back();
  // split on the last +/- that is not a leading sign or exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t pos = s.size(); pos-- > 1;) {
    if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' &&
        s[pos - 1] != 'E') {
      split = pos;
      break;
    }
  }
  if (split == std::string::npos) {
    return Complex{0.0, to_double(s)};
  }
  return Complex{to_double(s.substr(0, split)), to_double(s.substr(split))};
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g%+gi", z.real(), z.imag());
  return buf;
}

struct CommonOptions {
  std::string input;
  std::string point_text;
  double tol_rel = -1.0;
  double tol_abs = 0.0;
  std::string normal_rank = "auto";
  std::size_t max_order = 0;
  std::size_t trials = 5;
  std::uint64_t seed = 0x5eed5eedULL;
  bool global_scale = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--input,-i", opt.input, "series file (JSON)")->required();
  cmd->add_option("--point", opt.point_text,
                  "expansion point as a+bi (default: the file's point)");
  cmd->add_option("--tol", opt.tol_rel,
                  "relative rank tolerance (default max(m,n)*eps; env "
                  "SMIMC_TOL)");
  cmd->add_option("--abs-tol", opt.tol_abs, "absolute rank tolerance floor");
  cmd->add_option("--normal-rank", opt.normal_rank,
                  "normal rank: 'auto' or an integer");
  cmd->add_option("--max-order", opt.max_order,
                  "step bound for the rank search (0 = automatic)");
  cmd->add_option("--trials", opt.trials,
                  "sample points for normal-rank estimation");
  cmd->add_option("--seed", opt.seed, "seed for random sampling");
  cmd->add_flag("--global-scale", opt.global_scale,
                "floor rank cutoffs at the initial coefficient scale");
}

Tolerance make_tolerance(const CommonOptions& opt) {
  Tolerance tol{opt.tol_rel, opt.tol_abs};
  if (tol.rel < 0.0) {
    if (const char* env = std::getenv("SMIMC_TOL")) {
      try {
        tol.rel = std::stod(env);
      } catch (const std::exception&) {
        raise(ErrorCode::ParseError, "SMIMC_TOL is not a number");
      }
    }
  }
  return tol;
}

/// Ingest a series file: monomial-basis input is re-expanded about the
/// analysis point; shifted input must already match it.
LaurentMatrix load_series(const CommonOptions& opt) {
  const SeriesFileData data = read_series_file(opt.input);
  Complex point = data.matrix.point();
  if (!opt.point_text.empty()) point = parse_complex(opt.point_text);
  if (data.basis == "monomial") {
    std::vector<ComplexMatrix> coeffs;
    for (int t = 0; t < data.matrix.lowest(); ++t) {
      coeffs.emplace_back(data.matrix.rows(), data.matrix.cols());
    }
    for (std::size_t t = 0; t < data.matrix.count(); ++t) {
      coeffs.push_back(data.matrix.coeff(t));
    }
    const PolyMatrix monomial(Complex{}, std::move(coeffs));
    return reexpand(monomial, point);
  }
  if (point != data.matrix.point()) {
    raise(ErrorCode::PointMismatch,
          "--point differs from the expansion point stored in a shifted-basis "
          "file");
  }
  return data.matrix;
}

std::optional<std::size_t> parse_normal_rank(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    const long v = std::stol(text);
    if (v < 1) throw std::invalid_argument("nonpositive");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    raise(ErrorCode::ParseError, "--normal-rank must be 'auto' or a positive "
                                 "integer");
  }
}

template <typename T>
void print_list(const char* name, const std::vector<T>& values) {
  std::printf("%s:", name);
  for (const T& v : values) {
    std::printf(" %lld", static_cast<long long>(v));
  }
  std::printf("\n");
}

int cmd_analyze(const CommonOptions& opt, bool emit_full_n,
                const std::string& output) {
  const LaurentMatrix series = load_series(opt);

  DecomposeOptions options;
  options.normal_rank = parse_normal_rank(opt.normal_rank);
  options.tol = make_tolerance(opt);
  options.max_order = opt.max_order;
  options.emit_full_n = emit_full_n;
  options.global_scale = opt.global_scale;
  options.rank_trials = opt.trials;
  options.seed = opt.seed;

  const CompactDecomposition d = decompose(series, options);

  std::printf("point: %s\n", format_complex(d.point).c_str());
  std::printf("size: %zux%zu\n", d.rows, d.cols);
  if (d.empty()) {
    std::printf("normal_rank: 0 (zero function)\n");
    std::printf("sigma:\n");
  } else {
    std::printf("normal_rank: %zu\n", d.normal_rank);
    std::printf("ell: %d\n", d.ell);
    std::printf("d_prime: %zu\n", d.d_prime);
    print_list("sigma", d.sigma);
    print_list("e", d.e);
    print_list("rho", d.diagnostics.rho);
    std::printf("res_rel: %.6e\n", d.diagnostics.res_rel);
    std::printf("norm_P: %.6e\n", d.diagnostics.norm_input);
    std::printf("norm_N: %.6e\n", d.diagnostics.norm_N);
  }
  if (!output.empty()) {
    write_decomposition_file(output, d);
    std::printf("wrote: %s\n", output.c_str());
  }
  return 0;
}

int cmd_oracle(const CommonOptions& opt) {
  LaurentMatrix series = trim_leading(load_series(opt));
  if (series.is_zero()) {
    raise(ErrorCode::IncompleteProfile,
          "zero function: no Toeplitz profile exists");
  }
  const Tolerance tol = make_tolerance(opt);
  std::size_t r;
  if (auto given = parse_normal_rank(opt.normal_rank)) {
    r = *given;
  } else {
    r = estimate_normal_rank(series, opt.trials, tol, opt.seed);
  }
  const ToeplitzProfile profile =
      oracle_profile(series, r, tol, opt.max_order);

  std::printf("point: %s\n", format_complex(series.point()).c_str());
  std::printf("normal_rank: %zu\n", r);
  std::printf("k:");
  for (std::size_t t = 0; t < profile.ranks.size(); ++t) {
    std::printf(" %d", profile.lowest + static_cast<int>(t));
  }
  std::printf("\n");
  print_list("r_k", profile.ranks);
  print_list("rho", profile.rho);
  print_list("e", profile.e);
  print_list("sigma", profile.indices());
  std::printf("d_prime: %zu\n", profile.d_prime);
  return 0;
}

int cmd_verify(const std::string& series_path, const std::string& decomp_path,
               double res_tol, double det_spread_tol, std::size_t samples,
               std::uint64_t seed) {
  const SeriesFileData data = read_series_file(series_path);
  const CompactDecomposition d = read_decomposition_file(decomp_path);
  const LaurentMatrix& series = data.matrix;
  if (series.rows() != d.rows || series.cols() != d.cols) {
    raise(ErrorCode::MismatchedShapes,
          "series and decomposition dimensions differ");
  }
  if (series.point() != d.point) {
    raise(ErrorCode::MismatchedShapes,
          "series and decomposition expansion points differ");
  }

  bool all_ok = true;
  const auto check = [&all_ok](const char* name, bool ok) {
    std::printf("%-24s %s\n", name, ok ? "PASS" : "FAIL");
    all_ok = all_ok && ok;
  };

  bool sorted = true;
  for (std::size_t i = 1; i < d.sigma.size(); ++i) {
    sorted = sorted && d.sigma[i - 1] <= d.sigma[i];
  }
  check("sigma_sorted", sorted);
  check("sigma_length", d.sigma.size() == d.normal_rank);

  if (d.empty()) {
    check("zero_function", trim_leading(series).is_zero());
    return all_ok ? 0 : 1;
  }

  const ResidualReport report = residual_report(series, d);
  std::printf("res_rel: %.6e (tol %.1e)\n", report.res_rel, res_tol);
  check("residual", report.res_rel <= res_tol);

  check("Mr_hat_left_invertible",
        numerical_rank(d.Mr_hat.coeff(0)).rank == d.normal_rank);

  if (d.N_full) {
    check("N_full_invertible_at_point",
          numerical_rank(d.N_full->coeff(0)).rank == d.cols);
    // determinant of a unimodular factor is constant; sample its spread
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    const auto next_u01 = [&state]() {
      state += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
      return static_cast<double>(z >> 11) * 0x1.0p-53;
    };
    std::vector<Complex> dets;
    for (std::size_t t = 0; t < samples; ++t) {
      const double radius = 0.5 + 1.5 * next_u01();
      const double angle = 2.0 * 3.14159265358979323846 * next_u01();
      const Complex z = d.point + Complex{radius * std::cos(angle),
                                          radius * std::sin(angle)};
      dets.push_back(determinant(eval(*d.N_full, z)));
    }
    double max_abs = 0.0, max_diff = 0.0;
    for (const Complex& v : dets) max_abs = std::max(max_abs, std::abs(v));
    for (const Complex& v : dets) {
      for (const Complex& w : dets) {
        max_diff = std::max(max_diff, std::abs(v - w));
      }
    }
    const double spread = max_abs > 0.0 ? max_diff / max_abs : 1.0;
    std::printf("det_spread: %.6e (tol %.1e)\n", spread, det_spread_tol);
    check("unimodular_det_spread", spread <= det_spread_tol);
  }

  std::printf("verify: %s\n", all_ok ? "PASS" : "FAIL");
  return all_ok ? 0 : 1;
}

InstanceSpec instance_spec_from_flags(std::size_t rows, std::size_t cols,
                                      std::size_t rank,
                                      const std::vector<int>& exps,
                                      std::size_t deg, int power,
                                      bool complex_entries, bool identity,
                                      const std::string& point_text,
                                      std::uint64_t seed) {
  InstanceSpec spec;
  spec.m = rows;
  spec.n = cols;
  spec.r = rank;
  spec.exponents = exps;
  spec.transform_degree = deg;
  spec.power = power;
  spec.complex_entries = complex_entries;
  spec.identity_transforms = identity;
  if (!point_text.empty()) spec.point = parse_complex(point_text);
  spec.seed = seed;
  return spec;
}

int cmd_gen_table(const std::string& which, std::uint64_t seed,
                  bool complex_entries, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const bool table1 = which == "table1";
  std::string manifest = "{\n  \"table\": \"" + which + "\",\n  \"seed\": " +
                         std::to_string(seed) + ",\n  \"rows\": [\n";
  for (int row = 1; row <= 10; ++row) {
    const InstanceSpec spec = table1
                                  ? table1_row_spec(row, seed, complex_entries)
                                  : table2_row_spec(row, seed, complex_entries);
    const GeneratedInstance inst = gen_instance(spec);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_row%02d.json", which.c_str(), row);
    const std::string path = out_dir + "/" + name;
    write_series_file(path, inst.P);
    manifest += std::string("    {\"row\": ") + std::to_string(row) +
                ", \"file\": \"" + name + "\", \"planted\": [";
    for (std::size_t j = 0; j < inst.planted.size(); ++j) {
      manifest += (j ? ", " : "") + std::to_string(inst.planted[j]);
    }
    manifest += "]}";
    manifest += row < 10 ? ",\n" : "\n";
    std::printf("wrote %s\n", path.c_str());
  }
  manifest += "  ]\n}\n";
  std::ofstream mf(out_dir + "/manifest.json", std::ios::binary);
  mf << manifest;
  std::printf("wrote %s/manifest.json\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "compact local Smith-McMillan decompositions from Laurent coefficient "
      "stacks"};
  app.require_subcommand(1);

  CommonOptions analyze_opt;
  bool emit_full_n = false;
  std::string analyze_output;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "decompose a series at its expansion point");
  add_common(analyze, analyze_opt);
  analyze->add_flag("--emit-full-n", emit_full_n,
                    "store the full unimodular factor in the output");
  analyze->add_option("--output,-o", analyze_output,
                      "write the decomposition file here");

  CommonOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force block-Toeplitz rank profile (reference path)");
  add_common(oracle, oracle_opt);

  std::string verify_series, verify_decomp;
  double res_tol = 1e-10, det_spread_tol = 1e-8;
  std::size_t verify_samples = 10;
  std::uint64_t verify_seed = 0x5eed5eedULL;
  CLI::App* verify = app.add_subcommand(
      "verify", "re-check a decomposition file against its series");
  verify->add_option("--input,-i", verify_series, "series file")->required();
  verify->add_option("--decomp,-d", verify_decomp, "decomposition file")
      ->required();
  verify->add_option("--res-tol", res_tol, "relative residual bound");
  verify->add_option("--det-spread-tol", det_spread_tol,
                     "unimodularity: relative determinant spread bound");
  verify->add_option("--samples", verify_samples, "determinant sample points");
  verify->add_option("--seed", verify_seed, "sampling seed");

  std::string gen_kind;
  std::uint64_t gen_seed = 21;
  bool gen_complex = false;
  std::string gen_out_dir = ".";
  std::string gen_out_file;
  std::size_t g_rows = 4, g_cols = 5, g_rank = 3, g_deg = 2;
  std::vector<int> g_exps = {0, 1, 3};
  int g_power = 1;
  bool g_identity = false;
  std::string g_point;
  CLI::App* gen = app.add_subcommand(
      "gen", "generate experiment instances as series files");
  gen->add_option("kind", gen_kind, "table1 | table2 | instance")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_flag("--complex", gen_complex, "complex random coefficients");
  gen->add_option("--out-dir", gen_out_dir, "output directory (tables)");
  gen->add_option("--out", gen_out_file, "output file (single instance)");
  gen->add_option("--rows", g_rows, "instance rows");
  gen->add_option("--cols", g_cols, "instance cols");
  gen->add_option("--rank", g_rank, "planted normal rank");
  gen->add_option("--exps", g_exps, "planted structural indices");
  gen->add_option("--deg", g_deg, "transform degree");
  gen->add_option("--power", g_power, "dynamic-range power of the entries");
  gen->add_flag("--identity", g_identity, "identity transforms (plant only)");
  gen->add_option("--point", g_point, "expansion point a+bi");

  std::string bench_kind;
  std::uint64_t bench_seed = 21;
  bool bench_complex = false;
  std::string bench_json;
  CLI::App* bench = app.add_subcommand(
      "bench", "run a table experiment and print the summary rows");
  bench->add_option("kind", bench_kind, "table1 | table2")->required();
  bench->add_option("--seed", bench_seed, "generator seed");
  bench->add_flag("--complex", bench_complex, "complex random coefficients");
  bench->add_option("--json", bench_json, "also write rows as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(analyze_opt, emit_full_n, analyze_output);
    }
    if (app.got_subcommand(oracle)) {
      return cmd_oracle(oracle_opt);
    }
    if (app.got_subcommand(verify)) {
      return cmd_verify(verify_series, verify_decomp, res_tol, det_spread_tol,
                        verify_samples, verify_seed);
    }
    if (app.got_subcommand(gen)) {
      if (gen_kind == "table1" || gen_kind == "table2") {
        return cmd_gen_table(gen_kind, gen_seed, gen_complex, gen_out_dir);
      }
      if (gen_kind != "instance") {
        raise(ErrorCode::ParseError, "gen kind must be table1|table2|instance");
      }
      const InstanceSpec spec = instance_spec_from_flags(
          g_rows, g_cols, g_rank, g_exps, g_deg, g_power, gen_complex,
          g_identity, g_point, gen_seed);
      const GeneratedInstance inst = gen_instance(spec);
      const std::string path =
          gen_out_file.empty() ? "instance.json" : gen_out_file;
      write_series_file(path, inst.P);
      std::printf("wrote %s (planted:", path.c_str());
      for (int e : inst.planted) std::printf(" %d", e);
      std::printf(")\n");
      return 0;
    }
    if (app.got_subcommand(bench)) {
      if (bench_kind != "table1" && bench_kind != "table2") {
        raise(ErrorCode::ParseError, "bench kind must be table1|table2");
      }
      const std::vector<TableRow> rows =
          bench_kind == "table1" ? run_table1(bench_seed, bench_complex)
                                 : run_table2(bench_seed, bench_complex);
      const std::string table =
          format_table(rows, bench_kind == "table1" ? "i" : "k");
      std::fputs(table.c_str(), stdout);
      if (!bench_json.empty()) {
        std::string j = "{\n  \"table\": \"" + bench_kind + "\",\n  \"seed\": " +
                        std::to_string(bench_seed) + ",\n  \"rows\": [\n";
        char buf[256];
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const TableRow& r = rows[i];
          std::string sig;
          for (std::size_t t = 0; t < r.sigma.size(); ++t) {
            sig += (t ? ", " : "") + std::to_string(r.sigma[t]);
          }
          std::snprintf(buf, sizeof(buf),
                        "    {\"label\": %d, \"norm_P\": %.17g, \"res_rel\": "
                        "%.17g, \"norm_N\": %.17g, \"sigma\": [%s], "
                        "\"indices_ok\": %s}%s\n",
                        r.label, r.norm_P, r.res_rel, r.norm_N, sig.c_str(),
                        r.indices_ok ? "true" : "false",
                        i + 1 < rows.size() ? "," : "");
          j += buf;
        }
        j += "  ]\n}\n";
        std::ofstream out(bench_json, std::ios::binary);
        out << j;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
