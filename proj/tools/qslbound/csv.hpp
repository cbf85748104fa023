#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace qslcli {

// Doubles rendered with 12 significant digits (shortest general form);
// locale-independent, infinities and NaN as "inf" / "-inf" / "nan".
std::string format_double(double v);

// Comma-delimited UTF-8 CSV with a single header row and '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  // Convenience: formats the numeric tail with format_double.
  void row(const std::vector<std::string>& text_cells,
           const std::vector<double>& numeric_cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::string path_;
};

// Shared metadata block recorded next to every CSV (same basename,
// ".meta.json" suffix): run parameters, tolerances, library version.
nlohmann::json base_metadata(const RunConfig& cfg, const std::string& command);
void write_metadata(const std::string& csv_path, const nlohmann::json& meta);

}  // namespace qslcli
