#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hysim::cli {

/// Runs one subcommand (simulate | sweep | equilibria | periodic | verify)
/// against a config file, with optional dotted-path overrides and an output
/// directory override. Writes CSVs/SVGs plus a run.meta file and prints a
/// one-line summary per run. Returns the process exit status:
///   0 success, 1 verification violation, 2 config error,
///   3 numerical divergence, 4 non-convergence.
int run(const std::string& subcommand, const std::filesystem::path& config_path,
        const std::vector<std::string>& overrides = {},
        const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace hysim::cli
