#pragma once

#include <string>

#include "smimc/smithform.hpp"

namespace smimc {

/// On-disk series: UTF-8 JSON with explicit re/im grids per coefficient.
/// basis "shifted" means the coefficients expand about the stored point;
/// "monomial" means plain powers of lambda (only with lowest >= 0 and an
/// exact series) and gets re-expanded about the analysis point on ingest.
struct SeriesFileData {
  LaurentMatrix matrix;
  std::string basis = "shifted";
};

std::string write_series(const LaurentMatrix& m,
                         const std::string& basis = "shifted");
SeriesFileData parse_series(const std::string& text);

void write_series_file(const std::string& path, const LaurentMatrix& m,
                       const std::string& basis = "shifted");
SeriesFileData read_series_file(const std::string& path);

std::string write_decomposition(const CompactDecomposition& d);
CompactDecomposition parse_decomposition(const std::string& text);

void write_decomposition_file(const std::string& path,
                              const CompactDecomposition& d);
CompactDecomposition read_decomposition_file(const std::string& path);

}  // namespace smimc
