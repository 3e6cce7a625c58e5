#include "smimc/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smimc/errors.hpp"

namespace smimc {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    raise(ErrorCode::ParseError, "complex value needs re/im fields");
  }
  return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}

json grid_to_json(const ComplexMatrix& c, bool imag) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < c.cols(); ++j) {
      row.push_back(imag ? c(i, j).imag() : c(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json coeffs_to_json(const LaurentMatrix& m) {
  json coeffs = json::array();
  for (std::size_t t = 0; t < m.count(); ++t) {
    coeffs.push_back(json{{"re", grid_to_json(m.coeff(t), false)},
                          {"im", grid_to_json(m.coeff(t), true)}});
  }
  return coeffs;
}

std::vector<ComplexMatrix> coeffs_from_json(const json& j, std::size_t rows,
                                            std::size_t cols) {
  if (!j.is_array() || j.empty()) {
    raise(ErrorCode::ParseError, "coeffs must be a nonempty array");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(j.size());
  for (const json& item : j) {
    if (!item.is_object() || !item.contains("re") || !item.contains("im")) {
      raise(ErrorCode::ParseError, "coefficient needs re/im grids");
    }
    const json& re = item.at("re");
    const json& im = item.at("im");
    if (!re.is_array() || re.size() != rows || !im.is_array() ||
        im.size() != rows) {
      raise(ErrorCode::ParseError, "coefficient grid row count mismatch");
    }
    ComplexMatrix c(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const json& rrow = re.at(i);
      const json& irow = im.at(i);
      if (!rrow.is_array() || rrow.size() != cols || !irow.is_array() ||
          irow.size() != cols) {
        raise(ErrorCode::ParseError, "coefficient grid column count mismatch");
      }
      for (std::size_t jj = 0; jj < cols; ++jj) {
        c(i, jj) = Complex{rrow.at(jj).get<double>(),
                           irow.at(jj).get<double>()};
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

json series_block(const LaurentMatrix& m) {
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"point", complex_to_json(m.point())},
              {"lowest", m.lowest()},
              {"exact", m.exact()},
              {"coeffs", coeffs_to_json(m)}};
}

LaurentMatrix series_from_block(const json& j) {
  for (const char* key : {"rows", "cols", "point", "lowest", "exact",
                          "coeffs"}) {
    if (!j.contains(key)) {
      raise(ErrorCode::ParseError,
            std::string("series block missing field '") + key + "'");
    }
  }
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  return LaurentMatrix(complex_from_json(j.at("point")),
                       j.at("lowest").get<int>(),
                       coeffs_from_json(j.at("coeffs"), rows, cols),
                       j.at("exact").get<bool>());
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    raise(ErrorCode::ParseError, "malformed JSON");
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::ParseError, "cannot write '" + path + "'");
  }
  out << text;
}

}  // namespace

std::string write_series(const LaurentMatrix& m, const std::string& basis) {
  json j = series_block(m);
  j["basis"] = basis;
  return j.dump(2) + "\n";
}

SeriesFileData parse_series(const std::string& text) {
  const json j = parse_text(text);
  SeriesFileData data;
  data.basis = j.value("basis", "shifted");
  if (data.basis != "shifted" && data.basis != "monomial") {
    raise(ErrorCode::ParseError, "basis must be 'shifted' or 'monomial'");
  }
  data.matrix = series_from_block(j);
  if (!data.matrix.all_finite()) {
    raise(ErrorCode::NonFiniteInput, "series file holds NaN/Inf entries");
  }
  if (data.basis == "monomial" &&
      (data.matrix.lowest() < 0 || !data.matrix.exact())) {
    raise(ErrorCode::ParseError,
          "monomial basis requires lowest >= 0 and an exact series");
  }
  return data;
}

void write_series_file(const std::string& path, const LaurentMatrix& m,
                       const std::string& basis) {
  write_file(path, write_series(m, basis));
}

SeriesFileData read_series_file(const std::string& path) {
  return parse_series(read_file(path));
}

std::string write_decomposition(const CompactDecomposition& d) {
  json j;
  j["point"] = complex_to_json(d.point);
  j["rows"] = d.rows;
  j["cols"] = d.cols;
  j["normal_rank"] = d.normal_rank;
  j["ell"] = d.ell;
  j["d_prime"] = d.d_prime;
  j["sigma"] = d.sigma;
  j["e"] = d.e;
  j["rho"] = d.diagnostics.rho;
  j["Nr"] = series_block(d.Nr);
  j["Mr_hat"] = series_block(d.Mr_hat);
  j["Mr_hat"]["valid_order"] = static_cast<int>(d.Mr_hat.count()) - 1;
  if (d.N_full) j["N_full"] = series_block(*d.N_full);
  j["diagnostics"] = json{{"res_rel", d.diagnostics.res_rel},
                          {"norm_P", d.diagnostics.norm_input},
                          {"norm_N", d.diagnostics.norm_N}};
  return j.dump(2) + "\n";
}

CompactDecomposition parse_decomposition(const std::string& text) {
  const json j = parse_text(text);
  CompactDecomposition d;
  try {
    d.point = complex_from_json(j.at("point"));
    d.rows = j.at("rows").get<std::size_t>();
    d.cols = j.at("cols").get<std::size_t>();
    d.normal_rank = j.at("normal_rank").get<std::size_t>();
    d.ell = j.at("ell").get<int>();
    d.d_prime = j.at("d_prime").get<std::size_t>();
    d.sigma = j.at("sigma").get<std::vector<int>>();
    d.e = j.at("e").get<std::vector<std::size_t>>();
    d.diagnostics.rho = j.at("rho").get<std::vector<std::size_t>>();
    d.Nr = PolyMatrix(series_from_block(j.at("Nr")));
    d.Mr_hat = series_from_block(j.at("Mr_hat"));
    if (j.contains("N_full")) {
      d.N_full = PolyMatrix(series_from_block(j.at("N_full")));
    }
    const json& diag = j.at("diagnostics");
    d.diagnostics.res_rel = diag.at("res_rel").get<double>();
    d.diagnostics.norm_input = diag.at("norm_P").get<double>();
    d.diagnostics.norm_N = diag.at("norm_N").get<double>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, e.what());
  }
  if (d.sigma.size() != d.normal_rank) {
    raise(ErrorCode::ParseError, "sigma length differs from normal_rank");
  }
  return d;
}

void write_decomposition_file(const std::string& path,
                              const CompactDecomposition& d) {
  write_file(path, write_decomposition(d));
}

CompactDecomposition read_decomposition_file(const std::string& path) {
  return parse_decomposition(read_file(path));
}

}  // namespace smimc
