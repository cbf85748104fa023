#include "config.hpp"

#include <cmath>
#include <fstream>

namespace qslcli {

using nlohmann::json;
using qsl::ConfigError;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double number_at(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(ctx + ": missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> number_list(const json& j, const std::string& key) {
  std::vector<double> out;
  if (!j.at(key).is_array() || j.at(key).empty()) {
    fail("field '" + key + "' must be a non-empty array of numbers");
  }
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) fail("field '" + key + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

qsl::DensityMatrix parse_state(const json& j) {
  if (j.contains("bloch")) {
    const json& b = j.at("bloch");
    return qsl::from_bloch(number_at(b, "r", "state.bloch"),
                           number_at(b, "theta", "state.bloch"),
                           number_at(b, "phi", "state.bloch"));
  }
  if (j.contains("matrix")) {
    try {
      return qsl::DensityMatrix(parse_matrix(j.at("matrix"), "state.matrix"));
    } catch (const qsl::Error& e) {
      fail(std::string("state.matrix: ") + e.what());
    }
  }
  fail("state: expected 'bloch' or 'matrix'");
}

qsl::HamiltonianSpec parse_hamiltonian(const json& j) {
  if (!j.contains("type") || !j.at("type").is_string()) {
    fail("hamiltonian: missing string field 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "lz") {
      qsl::QubitDrive d;
      d.varpi = number_or(j, "varpi", 0.0);
      d.axis = qsl::LZAxis{number_at(j, "delta", "hamiltonian"),
                           number_at(j, "v", "hamiltonian")};
      return qsl::HamiltonianSpec(d);
    }
    if (type == "fixed_axis") {
      if (!j.contains("n") || !j.at("n").is_array() || j.at("n").size() != 3) {
        fail("hamiltonian: 'n' must be an array of 3 numbers");
      }
      qsl::QubitDrive d;
      d.varpi = number_or(j, "varpi", 0.0);
      d.axis = qsl::FixedAxis{qsl::Vec3(j.at("n")[0].get<double>(),
                                        j.at("n")[1].get<double>(),
                                        j.at("n")[2].get<double>())};
      return qsl::HamiltonianSpec(d);
    }
    if (type == "constant") {
      if (!j.contains("matrix")) fail("hamiltonian: constant type needs 'matrix'");
      return qsl::HamiltonianSpec(
          qsl::ConstantHamiltonian{parse_matrix(j.at("matrix"), "hamiltonian.matrix")});
    }
    if (type == "tabulated") {
      qsl::TabulatedHamiltonian tab;
      tab.times = number_list(j, "times");
      if (!j.contains("matrices") || !j.at("matrices").is_array()) {
        fail("hamiltonian: tabulated type needs array 'matrices'");
      }
      for (const auto& m : j.at("matrices")) {
        tab.values.push_back(parse_matrix(m, "hamiltonian.matrices[]"));
      }
      return qsl::HamiltonianSpec(std::move(tab));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const qsl::Error& e) {
    fail(std::string("hamiltonian: ") + e.what());
  }
  fail("hamiltonian: unknown type '" + type + "' (expected lz, fixed_axis, constant, tabulated)");
}

}  // namespace

qsl::Matrix parse_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    fail(what + ": expected a row-major array of [re, im] pairs");
  }
  const std::size_t len = j.size();
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(len))));
  if (d * d != len) fail(what + ": length is not a perfect square");
  qsl::Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < len; ++k) {
    const json& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      fail(what + ": entries must be [re, im] pairs");
    }
    m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) =
        qsl::Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

nlohmann::json matrix_to_json(const qsl::Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return out;
}

const char* to_string_or_throw(qsl::GConvention conv) { return qsl::to_string(conv); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config root must be a JSON object");

  RunConfig cfg;
  if (j.contains("state")) cfg.state = parse_state(j.at("state"));
  if (j.contains("hamiltonian")) cfg.hamiltonian = parse_hamiltonian(j.at("hamiltonian"));
  if (cfg.state && cfg.hamiltonian &&
      cfg.state->dim() != cfg.hamiltonian->dim()) {
    fail("state and hamiltonian dimensions differ");
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (g.contains("alpha")) cfg.alphas = number_list(g, "alpha");
    if (g.contains("tau")) cfg.taus = number_list(g, "tau");
    if (g.contains("points")) {
      const double p = g.at("points").get<double>();
      if (p < 2 || p != std::floor(p)) fail("grid.points must be an integer >= 2");
      cfg.grid_points = static_cast<std::size_t>(p);
    }
  }
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) fail("grid.alpha entries must lie strictly in (0, 1)");
  }
  for (double t : cfg.taus) {
    if (!(t > 0.0)) fail("grid.tau entries must be positive");
  }

  if (j.contains("steps")) {
    const double s = j.at("steps").get<double>();
    if (s < 2 || s != std::floor(s)) fail("steps must be an integer >= 2");
    cfg.steps = static_cast<std::size_t>(s);
  }
  if (j.contains("convention")) {
    const std::string c = j.at("convention").get<std::string>();
    if (c == "appendix") {
      cfg.convention = qsl::GConvention::Appendix;
    } else if (c == "maintext") {
      cfg.convention = qsl::GConvention::MainText;
    } else {
      fail("convention must be 'appendix' or 'maintext'");
    }
  }
  if (j.contains("quadrature")) {
    const std::string q = j.at("quadrature").get<std::string>();
    if (q == "simpson") {
      cfg.quadrature = qsl::QuadratureRule::Simpson;
    } else if (q == "trapezoid") {
      cfg.quadrature = qsl::QuadratureRule::Trapezoid;
    } else {
      fail("quadrature must be 'simpson' or 'trapezoid'");
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("seed must be a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("figures")) {
    if (!j.at("figures").is_array()) fail("figures must be an array of names");
    for (const auto& f : j.at("figures")) {
      if (!f.is_string()) fail("figures entries must be strings");
      cfg.figures.push_back(f.get<std::string>());
    }
  }
  if (j.contains("verify")) {
    const json& v = j.at("verify");
    if (v.contains("instances")) {
      const double n = v.at("instances").get<double>();
      if (n < 1 || n != std::floor(n)) fail("verify.instances must be a positive integer");
      cfg.verify_instances = static_cast<std::size_t>(n);
    }
    if (v.contains("steps")) {
      const double s = v.at("steps").get<double>();
      if (s < 2 || s != std::floor(s)) fail("verify.steps must be an integer >= 2");
      cfg.verify_steps = static_cast<std::size_t>(s);
    }
  }

  if (cfg.quadrature == qsl::QuadratureRule::Simpson &&
      (cfg.steps % 2 != 0 || cfg.verify_steps % 2 != 0)) {
    fail("Simpson quadrature needs an even step count");
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, std::optional<std::size_t> steps,
                     const std::optional<std::string>& convention,
                     std::optional<std::uint64_t> seed) {
  if (steps) {
    if (*steps < 2) fail("--steps must be >= 2");
    if (cfg.quadrature == qsl::QuadratureRule::Simpson && *steps % 2 != 0) {
      fail("--steps must be even under Simpson quadrature");
    }
    cfg.steps = *steps;
  }
  if (convention) {
    if (*convention == "appendix") {
      cfg.convention = qsl::GConvention::Appendix;
    } else if (*convention == "maintext") {
      cfg.convention = qsl::GConvention::MainText;
    } else {
      fail("--convention must be 'appendix' or 'maintext'");
    }
  }
  if (seed) cfg.seed = *seed;
}

}  // namespace qslcli
