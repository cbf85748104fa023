#include "csv.hpp"

#include <charconv>
#include <cmath>

#include <qsl/version.hpp>

namespace qslcli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()), path_(path) {
  if (!out_) throw qsl::ConfigError("cannot open output file: " + path);
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw qsl::ConfigError("internal: CSV row width mismatch in " + path_);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw qsl::ConfigError("write failure on " + path_);
}

void CsvWriter::row(const std::vector<std::string>& text_cells,
                    const std::vector<double>& numeric_cells) {
  std::vector<std::string> cells = text_cells;
  cells.reserve(text_cells.size() + numeric_cells.size());
  for (double v : numeric_cells) cells.push_back(format_double(v));
  row(cells);
}

nlohmann::json base_metadata(const RunConfig& cfg, const std::string& command) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["library_version"] = qsl::version_string;
  meta["convention"] = qsl::to_string(cfg.convention);
  meta["quadrature"] = qsl::to_string(cfg.quadrature);
  meta["steps"] = cfg.steps;
  meta["seed"] = cfg.seed;
  meta["tolerances"] = {
      {"rank_tol", qsl::Tolerances::rank_tol},
      {"hermiticity", qsl::Tolerances::hermiticity},
      {"trace", qsl::Tolerances::trace},
      {"eigenvalue_floor", qsl::Tolerances::eig_floor},
      {"phi_denominator", qsl::Tolerances::phi_den},
      {"overlap", qsl::Tolerances::overlap},
      {"bound_slack", 1e-9},
  };
  return meta;
}

void write_metadata(const std::string& csv_path, const nlohmann::json& meta) {
  std::string path = csv_path;
  const std::string suffix = ".csv";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    path.resize(path.size() - suffix.size());
  }
  path += ".meta.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qsl::ConfigError("cannot open metadata file: " + path);
  out << meta.dump(2) << '\n';
}

}  // namespace qslcli
