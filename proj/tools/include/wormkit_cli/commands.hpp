#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wormkit_cli/config.hpp"
#include "wormkit_cli/report.hpp"

namespace wormkit::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

// Runs one experiment. The config must already have defaults applied.
// Library exceptions propagate.
Report run_command(const ExperimentConfig& cfg);

// Runs the experiment, writes the report to cfg.output_path (or `out` when
// empty) and maps failures to exit statuses with a diagnostic on `err`.
// A report whose "pass" column holds false also exits with kExitNumerical.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line: `wormkit [command] [--config FILE] [flags]`. Flags
// override the config file.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace wormkit::cli
