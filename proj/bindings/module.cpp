#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hysim/analysis.hpp"
#include "hysim/cli.hpp"
#include "hysim/config.hpp"
#include "hysim/kp_model.hpp"
#include "hysim/simulator.hpp"
#include "hysim/svg.hpp"
#include "hysim/trace_io.hpp"
#include "hysim/verification.hpp"

namespace py = pybind11;
using namespace hysim;

namespace {

PiecewiseLinearCurve make_curve(const std::vector<std::pair<double, double>>& pts,
                                const std::string& left, const std::string& right) {
  auto ext = [](const std::string& s) {
    if (s == "constant") return Extension::constant;
    if (s == "linear") return Extension::linear;
    throw std::invalid_argument("extension must be 'constant' or 'linear'");
  };
  std::vector<CurvePoint> cp;
  cp.reserve(pts.size());
  for (const auto& [x, y] : pts) cp.push_back({x, y});
  return PiecewiseLinearCurve(std::move(cp), ext(left), ext(right));
}

void set_initial_memory(SimConfig& cfg, const py::object& value) {
  if (value.is_none() || (py::isinstance<py::str>(value) &&
                          value.cast<std::string>() == "virgin")) {
    cfg.w0 = VirginMemory{};
  } else {
    cfg.w0 = value.cast<std::vector<double>>();
  }
}

}  // namespace

PYBIND11_MODULE(_hysim, m) {
  m.doc() = "generalized-play hysteresis simulation toolkit";

  py::class_<CurvePreimage>(m, "CurvePreimage")
      .def_readonly("x", &CurvePreimage::x)
      .def_readonly("unbounded", &CurvePreimage::unbounded);

  py::class_<PiecewiseLinearCurve>(m, "PiecewiseLinearCurve")
      .def(py::init(&make_curve), py::arg("points"), py::arg("left_ext") = "constant",
           py::arg("right_ext") = "constant")
      .def("__call__", &PiecewiseLinearCurve::operator())
      .def("lipschitz_constant", &PiecewiseLinearCurve::lipschitz_constant)
      .def("modulus_of_continuity", &PiecewiseLinearCurve::modulus_of_continuity,
           py::arg("M"), py::arg("h"))
      .def("preimage_max", &PiecewiseLinearCurve::preimage_max)
      .def("preimage_min", &PiecewiseLinearCurve::preimage_min);

  py::class_<GeneralizedPlay>(m, "GeneralizedPlay")
      .def(py::init<PiecewiseLinearCurve, PiecewiseLinearCurve>(), py::arg("gamma_l"),
           py::arg("gamma_r"))
      .def("init", &GeneralizedPlay::init, py::arg("u0"), py::arg("w0"))
      .def("update", &GeneralizedPlay::update)
      .def("process",
           [](GeneralizedPlay& p, const std::vector<double>& u) { return p.process(u); })
      .def_property_readonly("memory", &GeneralizedPlay::memory);

  m.def("make_saturated_play", &make_saturated_play, py::arg("rho"), py::arg("lo"),
        py::arg("hi"), py::arg("scale") = 1.0);

  py::class_<PlayElement>(m, "PlayElement")
      .def(py::init<double, GeneralizedPlay>(), py::arg("weight"), py::arg("play"));

  py::class_<KpModel>(m, "KpModel")
      .def(py::init<std::vector<PlayElement>, double>(), py::arg("elements"),
           py::arg("offset") = 0.0)
      .def("init",
           py::overload_cast<double, const std::vector<double>&>(&KpModel::init),
           py::arg("u0"), py::arg("w0_elements"))
      .def("init_virgin", &KpModel::init_virgin)
      .def("update", &KpModel::update)
      .def_property_readonly("output", &KpModel::output)
      .def("aggregate_envelopes", &KpModel::aggregate_envelopes)
      .def("output_range", &KpModel::output_range);

  py::class_<StepSignal>(m, "StepSignal")
      .def(py::init<double, double, double>(), py::arg("t_on"),
           py::arg("level_before"), py::arg("level_after"));
  py::class_<HillGaussSignal>(m, "HillGaussSignal")
      .def(py::init<double, double, double, double, double, double, double>(),
           py::arg("a1"), py::arg("n"), py::arg("h"), py::arg("a2"), py::arg("sigma"),
           py::arg("mu"), py::arg("omega"));
  py::class_<SinusoidSignal>(m, "SinusoidSignal")
      .def(py::init<double, double, double, double>(), py::arg("A0"), py::arg("A"),
           py::arg("omega"), py::arg("phi") = 0.0)
      .def("period", &SinusoidSignal::period);
  py::class_<TableSignal>(m, "TableSignal")
      .def(py::init<std::vector<std::pair<double, double>>>(), py::arg("points"));

  m.def("eval_signal", &hysim::eval, py::arg("signal"), py::arg("t"));
  m.def("lipschitz_bound", &hysim::lipschitz_bound, py::arg("signal"),
        py::arg("horizon"), py::arg("grid_dt") = 1e-5);
  m.def("signal_period", &hysim::period, py::arg("signal"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](KpModel model, SignalSpec signal) {
             return SimConfig{.model = std::move(model), .signal = std::move(signal)};
           }),
           py::arg("model"), py::arg("signal"))
      .def_readwrite("K", &SimConfig::K)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("t_end", &SimConfig::t_end)
      .def_readwrite("u0", &SimConfig::u0)
      .def_readwrite("record_stride", &SimConfig::record_stride)
      .def_readwrite("divergence_limit", &SimConfig::divergence_limit)
      .def("set_initial_memory", &set_initial_memory, py::arg("w0"),
           "list of per-element memories, or 'virgin'/None");

  py::class_<Trace>(m, "Trace")
      .def_readonly("t", &Trace::t)
      .def_readonly("r", &Trace::r)
      .def_readonly("u", &Trace::u)
      .def_readonly("w", &Trace::w)
      .def_readonly("e", &Trace::e)
      .def("__len__", &Trace::size);

  m.def("simulate", &simulate, py::arg("config"));

  py::class_<PeriodicResult>(m, "PeriodicResult")
      .def_readonly("trace", &PeriodicResult::trace)
      .def_readonly("residual", &PeriodicResult::residual)
      .def_readonly("periods_discarded", &PeriodicResult::periods_discarded)
      .def_readonly("converged", &PeriodicResult::converged);

  m.def("find_periodic", &find_periodic, py::arg("config"), py::arg("tol") = 1e-9,
        py::arg("max_iter") = 100);

  py::class_<EquilibriumPair>(m, "EquilibriumPair")
      .def_readonly("u1", &EquilibriumPair::u1)
      .def_readonly("u2", &EquilibriumPair::u2)
      .def_readonly("R", &EquilibriumPair::R);

  m.def("equilibria", &equilibria, py::arg("model"), py::arg("R"));
  m.def("error_bound", &error_bound, py::arg("R_inf"), py::arg("H_max"));
  m.def("convergence_rate", &convergence_rate, py::arg("trace"), py::arg("t_begin"),
        py::arg("t_end"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("omega", &SweepRow::omega)
      .def_readonly("K", &SweepRow::K)
      .def_readonly("max_abs_e", &SweepRow::max_abs_e)
      .def_readonly("periods_discarded", &SweepRow::periods_discarded)
      .def_readonly("converged", &SweepRow::converged);
  py::class_<SweepTable>(m, "SweepTable").def_readonly("rows", &SweepTable::rows);

  m.def(
      "frequency_sweep",
      [](const SimConfig& base, const std::vector<double>& omegas,
         const std::vector<double>& gains) {
        return frequency_sweep(base, omegas, gains);
      },
      py::arg("config"), py::arg("omegas"), py::arg("gains"));

  m.def(
      "oracle_play",
      [](const std::vector<std::pair<double, double>>& points,
         const PiecewiseLinearCurve& gl, const PiecewiseLinearCurve& gr, double w0,
         int refinement) {
        return oracle_play(PiecewiseLinearInput{points}, gl, gr, w0, refinement);
      },
      py::arg("points"), py::arg("gamma_l"), py::arg("gamma_r"), py::arg("w0"),
      py::arg("refinement") = 8);

  m.def("run_cli", &cli::run, py::arg("subcommand"), py::arg("config_path"),
        py::arg("overrides") = std::vector<std::string>{},
        py::arg("out_dir") = std::optional<std::filesystem::path>{});

  m.attr("__version__") = "0.1.0";
}
