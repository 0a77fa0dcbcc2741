#include "hysim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "hysim/config.hpp"
#include "hysim/errors.hpp"
#include "hysim/svg.hpp"
#include "hysim/trace_io.hpp"

namespace hysim::cli {

namespace {

std::string gain_label(double K) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", K);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_run_meta(const ExperimentConfig& cfg, const nlohmann::json& effective) {
  std::ofstream os(cfg.output.dir / "run.meta", std::ios::binary);
  os << "config_hash=" << hash_hex(config_hash(effective)) << '\n'
     << "seed=" << cfg.seed << '\n';
}

std::vector<double> derived_levels(const SignalSpec& signal) {
  if (const auto* s = std::get_if<StepSignal>(&signal)) return {s->level_after};
  if (const auto* s = std::get_if<HillGaussSignal>(&signal)) return {s->a1};
  if (const auto* s = std::get_if<SinusoidSignal>(&signal)) {
    return {s->A0 - s->A, s->A0 + s->A};
  }
  const auto& table = std::get<TableSignal>(signal);
  return {table.points.back().second};
}

int run_simulate(const ExperimentConfig& cfg) {
  for (double K : cfg.solver.gains) {
    const SimConfig sim = cfg.build_sim(K);
    const Trace trace = simulate(sim);
    const auto label = gain_label(K);
    const auto csv = cfg.output.dir / ("trace_K" + label + ".csv");
    write_trace_csv(trace, csv);
    if (cfg.output.plots) {
      plot_trace(trace, PlotKind::error_vs_t, cfg.output.dir / ("error_K" + label + ".svg"));
      plot_trace(trace, PlotKind::log_error_vs_t,
                 cfg.output.dir / ("log_error_K" + label + ".svg"));
      plot_trace(trace, PlotKind::loop_w_vs_u, cfg.output.dir / ("loop_K" + label + ".svg"));
    }
    std::cout << "simulate K=" << label << " rows=" << trace.size()
              << " final|e|=" << format_double(std::abs(trace.e.back())) << " -> "
              << csv.string() << '\n';
  }
  return 0;
}

int run_periodic(const ExperimentConfig& cfg) {
  int status = 0;
  for (double K : cfg.solver.gains) {
    const SimConfig sim = cfg.build_sim(K);
    const PeriodicResult res =
        try_find_periodic(sim, cfg.analysis.periodic_tol, cfg.analysis.periodic_max_iter);
    const auto label = gain_label(K);
    const auto csv = cfg.output.dir / ("periodic_K" + label + ".csv");
    write_trace_csv(res.trace, csv);
    if (cfg.output.plots) {
      plot_trace(res.trace, PlotKind::error_vs_t,
                 cfg.output.dir / ("periodic_error_K" + label + ".svg"));
      plot_trace(res.trace, PlotKind::loop_w_vs_u,
                 cfg.output.dir / ("periodic_loop_K" + label + ".svg"));
    }
    std::cout << "periodic K=" << label << " iterations=" << res.periods_discarded
              << " residual=" << format_double(res.residual)
              << (res.converged ? "" : " NOT CONVERGED") << " -> " << csv.string()
              << '\n';
    if (!res.converged) status = 4;
  }
  return status;
}

int run_equilibria(const ExperimentConfig& cfg) {
  const KpModel model = cfg.model.build();
  std::vector<double> levels = cfg.analysis.R_values;
  if (levels.empty()) levels = derived_levels(cfg.signal);

  std::vector<EquilibriumPair> pairs;
  pairs.reserve(levels.size());
  for (double R : levels) pairs.push_back(equilibria(model, R));
  const auto csv = cfg.output.dir / "equilibria.csv";
  write_equilibria_csv(pairs, csv);

  for (const auto& eq : pairs) {
    std::cout << "equilibria R=" << format_double(eq.R) << " u1="
              << (eq.u1 ? format_double(eq.u1->x) : "none") << " u2="
              << (eq.u2 ? format_double(eq.u2->x) : "none") << " -> " << csv.string()
              << '\n';
  }
  return 0;
}

int run_sweep(const ExperimentConfig& cfg) {
  if (cfg.analysis.sweep_omegas.empty() || cfg.analysis.sweep_gains.empty()) {
    throw std::invalid_argument("sweep needs analysis.sweep_omegas and analysis.sweep_K");
  }
  const SimConfig base = cfg.build_sim(cfg.solver.gains.front());
  const SweepTable table = frequency_sweep(base, cfg.analysis.sweep_omegas,
                                           cfg.analysis.sweep_gains, cfg.sweep_options());
  const auto csv = cfg.output.dir / "sweep.csv";
  write_sweep_csv(table, csv);
  if (cfg.output.plots) plot_sweep(table, cfg.output.dir / "sweep_loglog.svg");

  int not_converged = 0;
  for (const auto& row : table.rows) {
    if (!row.converged) ++not_converged;
  }
  std::cout << "sweep rows=" << table.rows.size() << " not_converged=" << not_converged
            << " -> " << csv.string() << '\n';
  return 0;
}

int run_verify(const ExperimentConfig& cfg) {
  std::vector<CampaignReport> reports;
  reports.push_back(run_oracle_equivalence_campaign(cfg.verify.oracle_cases, cfg.seed));
  reports.push_back(run_visintin_campaign(cfg.verify.visintin_cases, cfg.seed + 1));
  reports.push_back(
      run_rate_independence_campaign(cfg.verify.warp_cases, cfg.seed + 2));

  // u0 pairs spanning the hysteresis band, derived from the envelope hull
  std::optional<NonExpansiveReport> poincare;
  if (period(cfg.signal) && cfg.verify.poincare_pairs > 0) {
    const SimConfig sim = cfg.build_sim(cfg.solver.gains.front());
    const auto [gl, gr] = sim.model.aggregate_envelopes();
    const double lo = gl.breakpoints().front().x - 1.0;
    const double hi = gr.breakpoints().back().x + 1.0;
    Rng rng(cfg.seed + 3);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(cfg.verify.poincare_pairs);
    for (int i = 0; i < cfg.verify.poincare_pairs; ++i) {
      const double a = rng.uniform(lo, hi);
      pairs.emplace_back(a, a + rng.uniform(-0.5, 0.5));
    }
    poincare = check_poincare_nonexpansive(sim, pairs);
    CampaignReport pr;
    pr.name = "poincare_nonexpansive";
    pr.seed = cfg.seed + 3;
    pr.cases = static_cast<int>(poincare->pairs.size());
    for (int i = 0; i < pr.cases; ++i) {
      const auto& pc = poincare->pairs[i];
      const bool pass =
          pc.endpoint_ok && (!pc.shared_memory || pc.pointwise_violations == 0);
      if (!pass) ++pr.violations;
      pr.worst_metric = std::max(pr.worst_metric, pc.worst_excess);
      pr.records.push_back({i, pass, pc.worst_excess});
    }
    reports.push_back(std::move(pr));
  }

  write_campaign_csv(reports, cfg.output.dir / "verify_results.csv");

  std::ofstream rep(cfg.output.dir / "verify_report.txt", std::ios::binary);
  bool all_pass = true;
  for (const auto& r : reports) {
    rep << r.name << ": cases=" << r.cases << " violations=" << r.violations
        << " worst_metric=" << format_double(r.worst_metric) << " seed=" << r.seed
        << '\n';
    std::cout << "verify " << r.name << " " << (r.passed() ? "PASS" : "FAIL")
              << " (" << r.cases << " cases, worst " << format_double(r.worst_metric)
              << ")\n";
    all_pass = all_pass && r.passed();
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run(const std::string& subcommand, const std::filesystem::path& config_path,
        const std::vector<std::string>& overrides,
        const std::optional<std::filesystem::path>& out_dir) {
  try {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read config " << config_path << '\n';
      return 2;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& err) {
      std::cerr << "error: config parse failure in " << config_path << ": "
                << err.what() << '\n';
      return 2;
    }
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: override must look like key=value: " << kv << '\n';
        return 2;
      }
      apply_override(j, kv.substr(0, eq), kv.substr(eq + 1));
    }

    const bool known = subcommand == "simulate" || subcommand == "periodic" ||
                       subcommand == "equilibria" || subcommand == "sweep" ||
                       subcommand == "verify";
    if (!known) {
      std::cerr << "error: unknown subcommand '" << subcommand << "'\n";
      return 2;
    }

    ExperimentConfig cfg = parse_config(j);
    if (out_dir) cfg.output.dir = *out_dir;
    std::filesystem::create_directories(cfg.output.dir);
    write_run_meta(cfg, j);

    if (subcommand == "simulate") return run_simulate(cfg);
    if (subcommand == "periodic") return run_periodic(cfg);
    if (subcommand == "equilibria") return run_equilibria(cfg);
    if (subcommand == "sweep") return run_sweep(cfg);
    return run_verify(cfg);
  } catch (const DivergenceError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 3;
  } catch (const NotConvergedError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace hysim::cli
