#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <qsl/bounds_qsl.hpp>
#include <qsl/evolution.hpp>
#include <qsl/matrix_core.hpp>

#include <json.hpp>

namespace qslcli {

// One run configuration, parsed from JSON and adjusted by CLI overrides.
struct RunConfig {
  std::optional<qsl::DensityMatrix> state;
  std::optional<qsl::HamiltonianSpec> hamiltonian;

  std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> taus{0.5, 1.0, 2.0, 5.0};

  std::size_t steps = 512;
  qsl::GConvention convention = qsl::GConvention::Appendix;
  qsl::QuadratureRule quadrature = qsl::QuadratureRule::Simpson;
  std::uint64_t seed = 1;

  // figures command.
  std::vector<std::string> figures;  // empty: all six
  std::size_t grid_points = 100;

  // verify command.
  std::size_t verify_instances = 1000;
  std::size_t verify_steps = 64;
};

// Parses the JSON file; throws qsl::ConfigError on any malformed or
// inconsistent content.
RunConfig load_config(const std::string& path);

// CLI flag overrides (applied after parsing).
void apply_overrides(RunConfig& cfg, std::optional<std::size_t> steps,
                     const std::optional<std::string>& convention,
                     std::optional<std::uint64_t> seed);

// Row-major matrix of [re, im] pairs <-> Eigen matrix.
qsl::Matrix parse_matrix(const nlohmann::json& j, const std::string& what);
nlohmann::json matrix_to_json(const qsl::Matrix& m);

const char* to_string_or_throw(qsl::GConvention conv);

}  // namespace qslcli
