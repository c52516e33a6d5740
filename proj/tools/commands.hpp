#pragma once

#include <ostream>

#include "run_config.hpp"

namespace fuzzyload::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

// Each command reads its inputs, writes outputs atomically (temp file +
// rename, nothing left behind on failure) and reports progress on `log`.
// Errors propagate as exceptions; run_cli maps them to exit statuses.
void cmd_ingest(const RunConfig& config, std::ostream& log);
void cmd_cluster(const RunConfig& config, std::ostream& log);
void cmd_assign(const RunConfig& config, std::ostream& log);
void cmd_tariff(const RunConfig& config, std::ostream& log);
void cmd_drift(const RunConfig& config, std::ostream& log);
void cmd_export_plot(const RunConfig& config, std::ostream& log);

// Full command-line entry point: `fuzzyload <subcommand> [flags]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fuzzyload::cli
