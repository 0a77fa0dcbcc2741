#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hysim/analysis.hpp"
#include "hysim/simulator.hpp"

namespace hysim {

/// One model element: saturated-play parameters or a raw curve pair.
struct ElementSpec {
  double weight = 1.0;
  std::optional<double> rho;
  std::optional<double> sat_lo;
  std::optional<double> sat_hi;
  double scale = 1.0;
  std::optional<PiecewiseLinearCurve> gamma_l;
  std::optional<PiecewiseLinearCurve> gamma_r;

  GeneralizedPlay build() const;
};

struct ModelSpec {
  std::vector<ElementSpec> elements;
  double offset = 0.0;

  KpModel build() const;
};

struct SolverBlock {
  std::vector<double> gains = {10.0};  // one simulation per K
  double dt = 1e-6;
  double t_end = 1.0;
  double u0 = 0.0;
  InitialMemory w0 = VirginMemory{};
  std::size_t record_stride = 0;  // 0 -> auto (~1e6 rows max)
};

struct AnalysisBlock {
  std::vector<double> R_values;  // empty -> derived from the signal
  std::optional<std::pair<double, double>> rate_window;
  double periodic_tol = 1e-9;
  int periodic_max_iter = 100;
  double steady_rel_tol = 1e-6;
  int max_periods = 50;
  std::vector<double> sweep_omegas;
  std::vector<double> sweep_gains;
  double sweep_stability_safety = 0.2;
  double sweep_min_steps_per_period = 1e5;
  double omega_limit_tol = 1e-4;
};

struct VerifyBlock {
  int oracle_cases = 1000;
  int visintin_cases = 1000;
  int warp_cases = 100;
  int poincare_pairs = 10;
};

struct OutputBlock {
  std::filesystem::path dir = "out";
  bool plots = true;
};

struct ExperimentConfig {
  ModelSpec model;
  SignalSpec signal;
  SolverBlock solver;
  AnalysisBlock analysis;
  VerifyBlock verify;
  OutputBlock output;
  std::uint64_t seed = 1;

  /// Simulation inputs for one gain value (auto record stride applied).
  SimConfig build_sim(double K) const;

  SweepOptions sweep_options() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Replaces the value at a dotted path (e.g. "solver.dt=1e-5"); the key must
/// already exist. The value text is parsed as JSON when possible, kept as a
/// string otherwise.
void apply_override(nlohmann::json& j, const std::string& dotted_key,
                    const std::string& value);

/// FNV-1a over the canonical dump; stable across runs of the same config.
std::uint64_t config_hash(const nlohmann::json& j);

}  // namespace hysim
