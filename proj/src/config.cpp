#include "hysim/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hysim {

using nlohmann::json;

namespace {

Extension extension_from(const std::string& s) {
  if (s == "constant") return Extension::constant;
  if (s == "linear") return Extension::linear;
  throw std::invalid_argument("unknown extension '" + s + "'");
}

std::string extension_name(Extension e) {
  return e == Extension::constant ? "constant" : "linear";
}

PiecewiseLinearCurve curve_from(const json& j) {
  std::vector<CurvePoint> pts;
  for (const auto& p : j.at("points")) {
    pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return PiecewiseLinearCurve(
      std::move(pts), extension_from(j.value("left_ext", "constant")),
      extension_from(j.value("right_ext", "constant")));
}

json curve_to(const PiecewiseLinearCurve& c) {
  json j;
  j["points"] = json::array();
  for (const auto& p : c.breakpoints()) j["points"].push_back({p.x, p.y});
  j["left_ext"] = extension_name(c.left_extension());
  j["right_ext"] = extension_name(c.right_extension());
  return j;
}

}  // namespace

GeneralizedPlay ElementSpec::build() const {
  if (gamma_l && gamma_r) {
    return GeneralizedPlay(*gamma_l, *gamma_r);
  }
  if (rho && sat_lo && sat_hi) {
    return make_saturated_play(*rho, *sat_lo, *sat_hi, scale);
  }
  throw std::invalid_argument(
      "element needs either {rho, sat_lo, sat_hi} or {gamma_l, gamma_r}");
}

KpModel ModelSpec::build() const {
  std::vector<PlayElement> built;
  built.reserve(elements.size());
  for (const auto& e : elements) {
    built.push_back({e.weight, e.build()});
  }
  return KpModel(std::move(built), offset);
}

SimConfig ExperimentConfig::build_sim(double K) const {
  SimConfig sim{.K = K,
                .dt = solver.dt,
                .t_end = solver.t_end,
                .u0 = solver.u0,
                .w0 = solver.w0,
                .model = model.build(),
                .signal = signal,
                .record_stride = solver.record_stride};
  if (sim.record_stride == 0) {
    const auto steps = static_cast<std::size_t>(std::ceil(solver.t_end / solver.dt));
    sim.record_stride = std::max<std::size_t>(1, steps / 1000000);
  }
  return sim;
}

SweepOptions ExperimentConfig::sweep_options() const {
  SweepOptions opts;
  opts.steady_rel_tol = analysis.steady_rel_tol;
  opts.max_periods = analysis.max_periods;
  opts.stability_safety = analysis.sweep_stability_safety;
  opts.min_steps_per_period = analysis.sweep_min_steps_per_period;
  return opts;
}

namespace {

SignalSpec signal_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "step") {
    return StepSignal{j.at("t_on").get<double>(), j.value("level_before", 0.0),
                      j.at("level_after").get<double>()};
  }
  if (kind == "hill_gauss") {
    return HillGaussSignal{j.at("a1").get<double>(),    j.at("n").get<double>(),
                           j.at("h").get<double>(),     j.at("a2").get<double>(),
                           j.at("sigma").get<double>(), j.at("mu").get<double>(),
                           j.at("omega").get<double>()};
  }
  if (kind == "sinusoid") {
    return SinusoidSignal{j.at("A0").get<double>(), j.at("A").get<double>(),
                          j.at("omega").get<double>(), j.value("phi", 0.0)};
  }
  if (kind == "table") {
    TableSignal t;
    for (const auto& p : j.at("points")) {
      t.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    return t;
  }
  throw std::invalid_argument("unknown signal kind '" + kind + "'");
}

json signal_to(const SignalSpec& s) {
  json j;
  if (const auto* step = std::get_if<StepSignal>(&s)) {
    j["kind"] = "step";
    j["t_on"] = step->t_on;
    j["level_before"] = step->level_before;
    j["level_after"] = step->level_after;
  } else if (const auto* hg = std::get_if<HillGaussSignal>(&s)) {
    j["kind"] = "hill_gauss";
    j["a1"] = hg->a1;
    j["n"] = hg->n;
    j["h"] = hg->h;
    j["a2"] = hg->a2;
    j["sigma"] = hg->sigma;
    j["mu"] = hg->mu;
    j["omega"] = hg->omega;
  } else if (const auto* sin = std::get_if<SinusoidSignal>(&s)) {
    j["kind"] = "sinusoid";
    j["A0"] = sin->A0;
    j["A"] = sin->A;
    j["omega"] = sin->omega;
    j["phi"] = sin->phi;
  } else {
    const auto& table = std::get<TableSignal>(s);
    j["kind"] = "table";
    j["points"] = json::array();
    for (const auto& p : table.points) j["points"].push_back({p.first, p.second});
  }
  return j;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;

  const json& jm = j.at("model");
  cfg.model.offset = jm.value("offset", 0.0);
  for (const auto& je : jm.at("elements")) {
    ElementSpec e;
    e.weight = je.value("weight", 1.0);
    if (je.contains("rho")) e.rho = je.at("rho").get<double>();
    if (je.contains("sat_lo")) e.sat_lo = je.at("sat_lo").get<double>();
    if (je.contains("sat_hi")) e.sat_hi = je.at("sat_hi").get<double>();
    e.scale = je.value("scale", 1.0);
    if (je.contains("gamma_l")) e.gamma_l = curve_from(je.at("gamma_l"));
    if (je.contains("gamma_r")) e.gamma_r = curve_from(je.at("gamma_r"));
    e.build();  // reject inconsistent blocks at load time
    cfg.model.elements.push_back(std::move(e));
  }

  cfg.signal = signal_from(j.at("signal"));

  const json& js = j.at("solver");
  cfg.solver.gains = js.at("K").get<std::vector<double>>();
  cfg.solver.dt = js.at("dt").get<double>();
  cfg.solver.t_end = js.at("t_end").get<double>();
  cfg.solver.u0 = js.value("u0", 0.0);
  if (js.contains("w0") && js.at("w0").is_array()) {
    cfg.solver.w0 = js.at("w0").get<std::vector<double>>();
  } else if (js.contains("w0") && js.at("w0") != json("virgin")) {
    throw std::invalid_argument("solver.w0 must be \"virgin\" or an array");
  }
  cfg.solver.record_stride = js.value("record_stride", std::size_t{0});

  if (j.contains("analysis")) {
    const json& ja = j.at("analysis");
    if (ja.contains("R_values")) {
      cfg.analysis.R_values = ja.at("R_values").get<std::vector<double>>();
    }
    if (ja.contains("rate_window")) {
      const auto& w = ja.at("rate_window");
      cfg.analysis.rate_window = {w.at(0).get<double>(), w.at(1).get<double>()};
    }
    cfg.analysis.periodic_tol = ja.value("periodic_tol", 1e-9);
    cfg.analysis.periodic_max_iter = ja.value("periodic_max_iter", 100);
    cfg.analysis.steady_rel_tol = ja.value("steady_rel_tol", 1e-6);
    cfg.analysis.max_periods = ja.value("max_periods", 50);
    if (ja.contains("sweep_omegas")) {
      cfg.analysis.sweep_omegas = ja.at("sweep_omegas").get<std::vector<double>>();
    }
    if (ja.contains("sweep_K")) {
      cfg.analysis.sweep_gains = ja.at("sweep_K").get<std::vector<double>>();
    }
    cfg.analysis.sweep_stability_safety = ja.value("sweep_stability_safety", 0.2);
    cfg.analysis.sweep_min_steps_per_period =
        ja.value("sweep_min_steps_per_period", 1e5);
    cfg.analysis.omega_limit_tol = ja.value("omega_limit_tol", 1e-4);
  }

  if (j.contains("verify")) {
    const json& jv = j.at("verify");
    cfg.verify.oracle_cases = jv.value("oracle_cases", 1000);
    cfg.verify.visintin_cases = jv.value("visintin_cases", 1000);
    cfg.verify.warp_cases = jv.value("warp_cases", 100);
    cfg.verify.poincare_pairs = jv.value("poincare_pairs", 10);
  }

  if (j.contains("output")) {
    const json& jo = j.at("output");
    cfg.output.dir = jo.value("dir", std::string("out"));
    cfg.output.plots = jo.value("plots", true);
  }

  cfg.seed = j.value("seed", std::uint64_t{1});

  cfg.model.build();  // surface model validation errors at load time
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"]["offset"] = cfg.model.offset;
  j["model"]["elements"] = json::array();
  for (const auto& e : cfg.model.elements) {
    json je;
    je["weight"] = e.weight;
    if (e.rho) je["rho"] = *e.rho;
    if (e.sat_lo) je["sat_lo"] = *e.sat_lo;
    if (e.sat_hi) je["sat_hi"] = *e.sat_hi;
    je["scale"] = e.scale;
    if (e.gamma_l) je["gamma_l"] = curve_to(*e.gamma_l);
    if (e.gamma_r) je["gamma_r"] = curve_to(*e.gamma_r);
    j["model"]["elements"].push_back(std::move(je));
  }

  j["signal"] = signal_to(cfg.signal);

  j["solver"]["K"] = cfg.solver.gains;
  j["solver"]["dt"] = cfg.solver.dt;
  j["solver"]["t_end"] = cfg.solver.t_end;
  j["solver"]["u0"] = cfg.solver.u0;
  if (const auto* w = std::get_if<std::vector<double>>(&cfg.solver.w0)) {
    j["solver"]["w0"] = *w;
  } else {
    j["solver"]["w0"] = "virgin";
  }
  j["solver"]["record_stride"] = cfg.solver.record_stride;

  json& ja = j["analysis"];
  if (!cfg.analysis.R_values.empty()) ja["R_values"] = cfg.analysis.R_values;
  if (cfg.analysis.rate_window) {
    ja["rate_window"] = {cfg.analysis.rate_window->first,
                         cfg.analysis.rate_window->second};
  }
  ja["periodic_tol"] = cfg.analysis.periodic_tol;
  ja["periodic_max_iter"] = cfg.analysis.periodic_max_iter;
  ja["steady_rel_tol"] = cfg.analysis.steady_rel_tol;
  ja["max_periods"] = cfg.analysis.max_periods;
  if (!cfg.analysis.sweep_omegas.empty()) ja["sweep_omegas"] = cfg.analysis.sweep_omegas;
  if (!cfg.analysis.sweep_gains.empty()) ja["sweep_K"] = cfg.analysis.sweep_gains;
  ja["sweep_stability_safety"] = cfg.analysis.sweep_stability_safety;
  ja["sweep_min_steps_per_period"] = cfg.analysis.sweep_min_steps_per_period;
  ja["omega_limit_tol"] = cfg.analysis.omega_limit_tol;

  j["verify"]["oracle_cases"] = cfg.verify.oracle_cases;
  j["verify"]["visintin_cases"] = cfg.verify.visintin_cases;
  j["verify"]["warp_cases"] = cfg.verify.warp_cases;
  j["verify"]["poincare_pairs"] = cfg.verify.poincare_pairs;

  j["output"]["dir"] = cfg.output.dir.string();
  j["output"]["plots"] = cfg.output.plots;

  j["seed"] = cfg.seed;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& err) {
    throw std::runtime_error("config parse error in " + path.string() + ": " +
                             err.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& err) {
    throw std::runtime_error("config schema error in " + path.string() + ": " +
                             err.what());
  }
}

void apply_override(json& j, const std::string& dotted_key, const std::string& value) {
  json* node = &j;
  std::size_t start = 0;
  std::vector<std::string> parts;
  while (true) {
    const auto dot = dotted_key.find('.', start);
    parts.push_back(dotted_key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i])) {
      throw std::invalid_argument("override path not found: " + dotted_key);
    }
    node = &(*node)[parts[i]];
  }
  if (!node->is_object() || !node->contains(parts.back())) {
    throw std::invalid_argument("override path not found: " + dotted_key);
  }
  json parsed = json::parse(value, nullptr, false);
  (*node)[parts.back()] = parsed.is_discarded() ? json(value) : parsed;
}

std::uint64_t config_hash(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hysim
