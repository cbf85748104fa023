#pragma once

#include <string>

#include "config.hpp"

namespace qslcli {

// Each command writes its CSV outputs plus metadata sidecars into `outdir`
// and returns a process exit code: 0 success, 1 invariant failure.
// Configuration problems throw qsl::ConfigError (mapped to exit code 2).
int cmd_entropies(const RunConfig& cfg, const std::string& outdir);
int cmd_bounds(const RunConfig& cfg, const std::string& outdir);
int cmd_qsl(const RunConfig& cfg, const std::string& outdir);
int cmd_figures(const RunConfig& cfg, const std::string& outdir);
int cmd_verify(const RunConfig& cfg, const std::string& outdir);

}  // namespace qslcli
