#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <qsl/errors.hpp>
#include <qsl/version.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string outdir;
  std::optional<std::size_t> steps;
  std::optional<std::string> convention;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration (JSON)")
      ->required();
  cmd->add_option("--out", opts.outdir, "Output directory for CSV + metadata")
      ->required();
  cmd->add_option("--steps", opts.steps,
                  "Propagation / quadrature steps (overrides config)");
  cmd->add_option("--convention", opts.convention,
                  "G arrangement: appendix | maintext (overrides config)");
  cmd->add_option("--seed", opts.seed, "Random seed (overrides config)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qslbound: generalized relative entropies, their evolution-speed "
      "bounds, and the derived quantum speed limits"};
  app.set_version_flag("--version", qsl::version_string);
  app.require_subcommand(1);

  CommonOpts opts;
  int (*runner)(const qslcli::RunConfig&, const std::string&) = nullptr;

  struct SubSpec {
    const char* name;
    const char* help;
    int (*fn)(const qslcli::RunConfig&, const std::string&);
  };
  const SubSpec subs[] = {
      {"entropies", "Divergences between the evolved and the initial state",
       qslcli::cmd_entropies},
      {"bounds", "Upper bounds with slack for every inequality variant",
       qslcli::cmd_bounds},
      {"qsl", "Quantum-speed-limit times per divergence family",
       qslcli::cmd_qsl},
      {"figures", "Closed-form single-qubit survey grids", qslcli::cmd_figures},
      {"verify", "Randomized invariant verification sweep", qslcli::cmd_verify},
  };
  for (const SubSpec& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, opts);
    cmd->callback([&runner, &s]() { runner = s.fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; parse problems exit 2
  }

  try {
    qslcli::RunConfig cfg = qslcli::load_config(opts.config_path);
    qslcli::apply_overrides(cfg, opts.steps, opts.convention, opts.seed);
    return runner(cfg, opts.outdir);
  } catch (const qsl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const qsl::Error& e) {
    std::fprintf(stderr, "invariant failure [%s]: %s\n", e.name().c_str(),
                 e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
