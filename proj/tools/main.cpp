#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hysim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generalized-play hysteresis simulation and verification toolkit"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  std::string out;

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"simulate", "integrate the compensation dynamics and export traces"},
      {"sweep", "steady-state error over a frequency/gain grid"},
      {"equilibria", "invert the aggregate envelopes at the input levels"},
      {"periodic", "find the periodic solution via Poincare iteration"},
      {"verify", "run the randomized operator property campaigns"},
  };
  for (const auto& [name, desc] : subs) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config, "experiment config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "dotted-path override, key=value");
    sub->add_option("--out", out, "output directory (overrides output.dir)");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  std::optional<std::filesystem::path> out_dir;
  if (!out.empty()) out_dir = out;
  return hysim::cli::run(name, config, overrides, out_dir);
}
