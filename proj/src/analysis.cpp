#include "hysim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "hysim/errors.hpp"

namespace hysim {

double error_bound(double R_inf, double H_max) {
  if (!(R_inf > 0.0) || !(R_inf < H_max)) {
    throw std::invalid_argument("error_bound requires 0 < R_inf < H_max");
  }
  return R_inf + H_max;
}

EquilibriumPair equilibria(const KpModel& model, double R) {
  const auto [gl, gr] = model.aggregate_envelopes();
  EquilibriumPair eq;
  eq.R = R;
  eq.u1 = gl.preimage_max(R);
  eq.u2 = gr.preimage_min(R);
  return eq;
}

LogErrorFit fit_log_error(const Trace& trace, double t_begin, double t_end) {
  if (trace.size() == 0 || t_begin >= t_end || t_begin < trace.t.front() ||
      t_end > trace.t.back() + 1e-12) {
    throw EstimationError("fit window outside trace");
  }
  constexpr double kFloor = 1e-14;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.t[i];
    if (t < t_begin || t > t_end) continue;
    const double a = std::abs(trace.e[i]);
    if (a <= kFloor) continue;
    xs.push_back(t);
    ys.push_back(std::log(a));
  }
  if (xs.size() < 2) {
    throw EstimationError("not enough samples above the |e| floor");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw EstimationError("degenerate time window");

  LogErrorFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.samples = xs.size();
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += resid * resid;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

double convergence_rate(const Trace& trace, double t_begin, double t_end) {
  return fit_log_error(trace, t_begin, t_end).slope;
}

namespace {

double interp_u(const Trace& trace, double t) {
  const auto& ts = trace.t;
  if (t <= ts.front()) return trace.u.front();
  if (t >= ts.back()) return trace.u.back();
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const auto i = static_cast<std::size_t>(it - ts.begin());
  const double a = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return trace.u[i - 1] + a * (trace.u[i] - trace.u[i - 1]);
}

}  // namespace

double steady_state_max_error(const Trace& trace, double T, int n_periods,
                              double residual_tol) {
  if (trace.size() < 2) throw std::invalid_argument("trace too short");
  if (!(T > 0.0) || n_periods < 1) throw std::invalid_argument("bad period arguments");
  const double span = trace.t.back() - trace.t.front();
  if (span + 1e-9 * T < (n_periods + 1) * T) {
    throw std::invalid_argument("trace must span at least (n_periods + 1) periods");
  }
  const double t_from = trace.t.back() - n_periods * T;

  double residual = 0.0;
  double max_e = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.t[i];
    if (t < t_from) continue;
    residual = std::max(residual, std::abs(trace.u[i] - interp_u(trace, t - T)));
    max_e = std::max(max_e, std::abs(trace.e[i]));
  }
  if (residual > residual_tol) {
    throw NotSteadyError(residual, "trace not periodic yet");
  }
  return max_e;
}

OmegaLimit omega_limit_check(const Trace& trace, const EquilibriumPair& eq, double tol,
                             double tail_fraction) {
  if (trace.size() == 0) throw std::invalid_argument("empty trace");
  const auto n = trace.size();
  auto m = static_cast<std::size_t>(static_cast<double>(n) * tail_fraction);
  m = std::clamp<std::size_t>(std::max<std::size_t>(m, 10), 1, n);
  const std::size_t first = n - m;

  double lo = trace.u[first];
  double hi = trace.u[first];
  double sum = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    lo = std::min(lo, trace.u[i]);
    hi = std::max(hi, trace.u[i]);
    sum += trace.u[i];
  }
  if (hi - lo > tol) return OmegaLimit::not_converged;
  const double mean = sum / static_cast<double>(m);

  const double d1 = eq.u1 ? std::abs(mean - eq.u1->x) : std::numeric_limits<double>::infinity();
  const double d2 = eq.u2 ? std::abs(mean - eq.u2->x) : std::numeric_limits<double>::infinity();
  if (std::min(d1, d2) <= tol) {
    return d1 <= d2 ? OmegaLimit::converged_to_u1 : OmegaLimit::converged_to_u2;
  }
  if (eq.u1 && eq.u2 && mean >= eq.u1->x - tol && mean <= eq.u2->x + tol) {
    return OmegaLimit::between;
  }
  return OmegaLimit::not_converged;
}

SweepTable frequency_sweep(const SimConfig& base, std::span<const double> omegas,
                           std::span<const double> Ks, const SweepOptions& opts) {
  const auto* sinusoid = std::get_if<SinusoidSignal>(&base.signal);
  if (!sinusoid) throw std::invalid_argument("frequency sweep needs a sinusoid signal");

  const auto [gl, gr] = base.model.aggregate_envelopes();
  const double lip = std::max({gl.lipschitz_constant(), gr.lipschitz_constant(), 1e-12});

  std::vector<double> omega_sorted(omegas.begin(), omegas.end());
  std::vector<double> k_sorted(Ks.begin(), Ks.end());
  std::sort(omega_sorted.begin(), omega_sorted.end());
  std::sort(k_sorted.begin(), k_sorted.end());

  auto run_cell = [&](double omega, double K) -> SweepRow {
    SinusoidSignal sig = *sinusoid;
    sig.omega = omega;
    const double T = sig.period();

    SimConfig cfg = base;
    cfg.signal = sig;
    cfg.K = K;
    cfg.t_end = T;
    cfg.dt = std::min(opts.stability_safety / (K * lip), T / opts.min_steps_per_period);
    const auto steps = static_cast<std::size_t>(T / cfg.dt);
    cfg.record_stride = std::max<std::size_t>(1, steps / opts.max_rows_per_period);

    const double tol = opts.steady_rel_tol * sup_abs(cfg.signal, T);
    PeriodicResult pr = try_find_periodic(cfg, tol, opts.max_periods);

    double max_e = 0.0;
    for (double e : pr.trace.e) max_e = std::max(max_e, std::abs(e));
    return {omega, K, max_e, pr.periods_discarded, pr.converged, pr.residual};
  };

  std::vector<std::future<SweepRow>> cells;
  cells.reserve(omega_sorted.size() * k_sorted.size());
  for (double omega : omega_sorted) {
    for (double K : k_sorted) {
      cells.push_back(std::async(std::launch::async, run_cell, omega, K));
    }
  }

  SweepTable table;
  table.rows.reserve(cells.size());
  for (auto& cell : cells) table.rows.push_back(cell.get());
  return table;
}

}  // namespace hysim
