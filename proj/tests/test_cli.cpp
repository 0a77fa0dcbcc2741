#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hysim/cli.hpp"
#include "hysim/config.hpp"
#include "hysim/svg.hpp"
#include "hysim/trace_io.hpp"

using namespace hysim;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = HYSIM_CONFIG_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  Rng rng(71);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.unit() - 0.5) * std::pow(10.0, rng.uniform(-20.0, 20.0));
    const std::string s = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(res.ec == std::errc());
    CHECK(back == v);
  }
}

TEST_CASE("trace CSV layout") {
  Trace trace;
  trace.t = {0.0, 0.5};
  trace.r = {1.0, 2.0};
  trace.u = {0.25, 0.125};
  trace.w = {0.5, 1.5};
  trace.e = {0.5, 0.5};
  std::ostringstream os;
  write_trace_csv(trace, os);
  CHECK(os.str() == "t,r,u,w,e\n0,1,0.25,0.5,0.5\n0.5,2,0.125,1.5,0.5\n");
}

TEST_CASE("sweep CSV carries the 2*pi*omega label column") {
  SweepTable table;
  table.rows.push_back({0.5, 10.0, 0.125, 3, true, 0.0});
  std::ostringstream os;
  write_sweep_csv(table, os);
  const std::string s = os.str();
  CHECK(s.find("omega_rad_s,freq_label_hz,K,max_abs_e,periods_discarded\n") == 0);
  CHECK(s.find("0.5,3.141592653589793,10,0.125,3\n") != std::string::npos);
}

TEST_CASE("config loads, serializes, and reloads identically") {
  for (const char* name : {"step.cfg", "hillgauss.cfg", "periodic.cfg"}) {
    const auto cfg = load_config(kConfigDir / name);
    const auto j1 = to_json(cfg);
    const auto cfg2 = parse_config(j1);
    const auto j2 = to_json(cfg2);
    CHECK(j1 == j2);
  }
}

TEST_CASE("shipped configs build the documented default model") {
  const auto cfg = load_config(kConfigDir / "step.cfg");
  const auto model = cfg.model.build();
  const auto [lo, hi] = model.output_range();
  CHECK(lo == 0.0);
  CHECK(hi == 4.0);
  CHECK(cfg.solver.gains == std::vector<double>{10.0, 50.0});
}

TEST_CASE("dotted-path overrides") {
  nlohmann::json j = nlohmann::json::parse(slurp(kConfigDir / "step.cfg"));
  apply_override(j, "solver.dt", "1e-5");
  CHECK(j["solver"]["dt"] == 1e-5);
  apply_override(j, "signal.level_after", "3.5");
  CHECK(j["signal"]["level_after"] == 3.5);
  apply_override(j, "solver.K", "[25]");
  CHECK(j["solver"]["K"] == nlohmann::json::array({25}));
  CHECK_THROWS_AS(apply_override(j, "solver.nope", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(j, "nope.dt", "1"), std::invalid_argument);
}

TEST_CASE("config hash is stable and override-sensitive") {
  nlohmann::json j = nlohmann::json::parse(slurp(kConfigDir / "step.cfg"));
  const auto h1 = config_hash(j);
  CHECK(h1 == config_hash(j));
  apply_override(j, "solver.dt", "1e-5");
  CHECK(h1 != config_hash(j));
}

TEST_CASE("simulate subcommand writes deterministic outputs") {
  TempDir a("hysim_cli_a");
  TempDir b("hysim_cli_b");
  const std::vector<std::string> overrides = {"solver.t_end=0.02", "solver.dt=1e-4",
                                              "solver.K=[10]"};
  REQUIRE(cli::run("simulate", kConfigDir / "step.cfg", overrides, a.path) == 0);
  REQUIRE(cli::run("simulate", kConfigDir / "step.cfg", overrides, b.path) == 0);

  CHECK(slurp(a.path / "trace_K10.csv") == slurp(b.path / "trace_K10.csv"));
  CHECK(slurp(a.path / "error_K10.svg") == slurp(b.path / "error_K10.svg"));

  const std::string meta = slurp(a.path / "run.meta");
  CHECK(meta.find("config_hash=") != std::string::npos);
  CHECK(meta.find("seed=") != std::string::npos);
  CHECK(meta == slurp(b.path / "run.meta"));
}

TEST_CASE("equilibria subcommand") {
  TempDir dir("hysim_cli_eq");
  REQUIRE(cli::run("equilibria", kConfigDir / "step.cfg", {}, dir.path) == 0);
  const std::string csv = slurp(dir.path / "equilibria.csv");
  CHECK(csv.find("R,u1,u1_flagged,u2,u2_flagged\n") == 0);
  CHECK(csv.find("\n2,0,0,1.41") != std::string::npos);  // u1 = 0, u2 = 4.25/3
}

TEST_CASE("verify subcommand with small campaign sizes") {
  TempDir dir("hysim_cli_verify");
  const std::vector<std::string> overrides = {
      "verify.oracle_cases=25", "verify.visintin_cases=25", "verify.warp_cases=10",
      "verify.poincare_pairs=0"};
  REQUIRE(cli::run("verify", kConfigDir / "step.cfg", overrides, dir.path) == 0);
  const std::string csv = slurp(dir.path / "verify_results.csv");
  CHECK(csv.find("campaign,case,pass,metric\n") == 0);
  CHECK(count_occurrences(csv, "\noracle_equivalence,") == 25);
  const std::string report = slurp(dir.path / "verify_report.txt");
  CHECK(report.find("oracle_equivalence: cases=25 violations=0") != std::string::npos);
}

TEST_CASE("unknown subcommand and missing config fail cleanly") {
  CHECK(cli::run("frobnicate", kConfigDir / "step.cfg") == 2);
  CHECK(cli::run("simulate", kConfigDir / "missing.cfg") == 2);
}

TEST_CASE("empty trace renders axes but no polylines") {
  TempDir dir("hysim_svg_empty");
  Trace empty;
  plot_trace(empty, PlotKind::error_vs_t, dir.path / "empty.svg");
  const std::string svg = slurp(dir.path / "empty.svg");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") == std::string::npos);
  CHECK(svg.find("<path") == std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);
}

TEST_CASE("sweep plot draws one polyline per gain") {
  TempDir dir("hysim_svg_sweep");
  SweepTable table;
  for (double omega : {0.01, 0.1, 1.0, 10.0}) {
    table.rows.push_back({omega, 10.0, 0.1 * omega, 3, true, 0.0});
    table.rows.push_back({omega, 50.0, 0.02 * omega, 3, true, 0.0});
  }
  plot_sweep(table, dir.path / "sweep.svg");
  const std::string svg = slurp(dir.path / "sweep.svg");
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(svg.find("K=10") != std::string::npos);
  CHECK(svg.find("K=50") != std::string::npos);
}

TEST_CASE("closed loop plot from a full sweep") {
  auto cfg = load_config(kConfigDir / "step.cfg");
  auto model = cfg.model.build();
  model.init_virgin(0.0);
  Trace loop;
  auto push = [&](double u) {
    loop.t.push_back(static_cast<double>(loop.size()));
    loop.u.push_back(u);
    loop.w.push_back(model.update(u));
    loop.r.push_back(0.0);
    loop.e.push_back(0.0 - loop.w.back());
  };
  for (int i = 0; i <= 100; ++i) push(-4.0 + 8.0 * i / 100.0);
  for (int i = 1; i <= 100; ++i) push(4.0 - 8.0 * i / 100.0);

  TempDir dir("hysim_svg_loop");
  plot_trace(loop, PlotKind::loop_w_vs_u, dir.path / "loop.svg");
  const std::string svg = slurp(dir.path / "loop.svg");
  CHECK(count_occurrences(svg, "<polyline") == 1);
}
