#include "hysim/simulator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hysim/errors.hpp"

namespace hysim {

namespace {

double divergence_guard(const SimConfig& config) {
  if (config.divergence_limit > 0.0) return config.divergence_limit;
  double scale = std::max(1.0, std::abs(config.u0));
  const auto [gl, gr] = config.model.aggregate_envelopes();
  for (const auto& p : gl.breakpoints()) scale = std::max(scale, std::abs(p.x));
  for (const auto& p : gr.breakpoints()) scale = std::max(scale, std::abs(p.x));
  return 1e6 * scale;
}

}  // namespace

void SimConfig::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("K must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (const auto* w = std::get_if<std::vector<double>>(&w0)) {
    if (w->size() != model.elements().size()) {
      throw std::invalid_argument("one initial memory per element required");
    }
  }
}

Trace simulate(const SimConfig& config) {
  config.validate();

  KpModel model = config.model;
  double u = config.u0;
  double w = model.init(config.u0, config.w0);
  const double guard = divergence_guard(config);

  const auto n_steps =
      static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));

  Trace trace;
  trace.config = config;
  const std::size_t rows = n_steps / config.record_stride + 2;
  trace.t.reserve(rows);
  trace.r.reserve(rows);
  trace.u.reserve(rows);
  trace.w.reserve(rows);
  trace.e.reserve(rows);

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    if (k > 0) w = model.update(u);
    const double r = eval(config.signal, t);
    const double e = r - w;
    if (!std::isfinite(u) || !std::isfinite(e) || std::abs(u) > guard) {
      throw DivergenceError(k, "simulation diverged");
    }
    if (k % config.record_stride == 0) {
      trace.t.push_back(t);
      trace.r.push_back(r);
      trace.u.push_back(u);
      trace.w.push_back(w);
      trace.e.push_back(e);
    }
    if (k < n_steps) u += config.dt * config.K * e;
  }

  trace.final_model = std::move(model);
  return trace;
}

namespace {

// One exact period: n_full whole steps plus a shortened final step, so the
// map is autonomous period-to-period. Records rows into `out` when non-null.
double advance_one_period(const SimConfig& config, KpModel& model, double u, double T,
                          double guard, Trace* out) {
  const auto n_full = static_cast<std::size_t>(std::floor(T / config.dt));
  const double dt_last = T - static_cast<double>(n_full) * config.dt;

  auto step = [&](std::size_t k, double h) {
    const double tau = static_cast<double>(k) * config.dt;
    const double w = model.update(u);
    const double r = eval(config.signal, tau);
    const double e = r - w;
    if (!std::isfinite(u) || !std::isfinite(e) || std::abs(u) > guard) {
      throw DivergenceError(k, "periodic integration diverged");
    }
    if (out && k < n_full && k % config.record_stride == 0) {
      out->t.push_back(tau);
      out->r.push_back(r);
      out->u.push_back(u);
      out->w.push_back(w);
      out->e.push_back(e);
    }
    u += h * config.K * e;
  };

  for (std::size_t k = 0; k < n_full; ++k) step(k, config.dt);
  if (dt_last > 0.0) step(n_full, dt_last);
  return u;
}

double required_period(const SimConfig& config, double T) {
  const auto p = period(config.signal);
  if (!p) throw std::invalid_argument("Poincare map needs a periodic signal");
  if (!(T > 0.0) || std::abs(*p - T) > 1e-9 * *p) {
    throw std::invalid_argument("T does not match the signal period");
  }
  return *p;
}

}  // namespace

PoincareResult poincare_map(const SimConfig& config, KpModel model, double u_start,
                            double T) {
  config.validate();
  required_period(config, T);
  if (!model.initialized()) throw std::logic_error("model used before init");
  const double guard = divergence_guard(config);
  const double u_end = advance_one_period(config, model, u_start, T, guard, nullptr);
  return {u_end, std::move(model)};
}

PeriodicResult try_find_periodic(const SimConfig& config, double tol, int max_iter) {
  config.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const auto p = period(config.signal);
  if (!p) throw std::invalid_argument("find_periodic needs a periodic signal");
  const double T = *p;
  const double guard = divergence_guard(config);

  KpModel model = config.model;
  model.init(config.u0, config.w0);
  double u = config.u0;

  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  for (int i = 1; i <= max_iter; ++i) {
    const double u_next = advance_one_period(config, model, u, T, guard, nullptr);
    residual = std::abs(u_next - u);
    u = u_next;
    iterations = i;
    if (residual < tol) {
      converged = true;
      break;
    }
  }

  PeriodicResult result;
  result.residual = residual;
  result.periods_discarded = iterations;
  result.converged = converged;
  result.trace.config = config;
  advance_one_period(config, model, u, T, guard, &result.trace);
  result.trace.final_model = std::move(model);
  return result;
}

PeriodicResult find_periodic(const SimConfig& config, double tol, int max_iter) {
  PeriodicResult result = try_find_periodic(config, tol, max_iter);
  if (!result.converged) {
    throw NotConvergedError(result.residual, "Poincare iteration did not converge");
  }
  return result;
}

}  // namespace hysim
