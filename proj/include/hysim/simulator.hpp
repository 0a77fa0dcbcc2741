#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hysim/kp_model.hpp"
#include "hysim/signal.hpp"

namespace hysim {

/// Inputs of one integration run of (1/K) du/dt + H(u) = r(t).
struct SimConfig {
  double K = 10.0;        // gain, > 0
  double dt = 1e-6;       // fixed step, s
  double t_end = 1.0;     // horizon, s
  double u0 = 0.0;
  InitialMemory w0 = VirginMemory{};
  KpModel model;          // element memories are (re)initialized per run
  SignalSpec signal;
  std::size_t record_stride = 1;
  double divergence_limit = 0.0;  // 0 -> 1e6 x equilibrium scale

  void validate() const;
};

/// Time-indexed record of (t, r, u, w = H(u), e = r - w); rows are uniformly
/// spaced at dt * record_stride.
struct Trace {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> w;
  std::vector<double> e;
  std::optional<SimConfig> config;      // the run that produced the trace
  std::optional<KpModel> final_model;   // operator state after the last step

  std::size_t size() const noexcept { return t.size(); }
};

/// Forward-Euler integration: w_k = H(u_k), e_k = r(t_k) - w_k,
/// u_{k+1} = u_k + dt * K * e_k. Throws DivergenceError if a value goes
/// non-finite or |u| leaves the guard interval.
Trace simulate(const SimConfig& config);

struct PoincareResult {
  double u_end;
  KpModel model;  // evolved hysteresis memory
};

/// Advances one full signal period T from (u_start, model state); the signal
/// must be T-periodic. The final partial step is shortened so the map covers
/// exactly T.
PoincareResult poincare_map(const SimConfig& config, KpModel model, double u_start,
                            double T);

struct PeriodicResult {
  Trace trace;            // one steady-state period, t relative to the period start
  double residual;        // |P(u) - u| at acceptance
  int periods_discarded;  // Poincare iterations before recording
  bool converged;
};

/// Iterates the Poincare map (memory carried along) until |P(u) - u| < tol;
/// returns the converged flag instead of throwing.
PeriodicResult try_find_periodic(const SimConfig& config, double tol, int max_iter);

/// Same, but throws NotConvergedError when max_iter is exhausted.
PeriodicResult find_periodic(const SimConfig& config, double tol, int max_iter);

}  // namespace hysim
