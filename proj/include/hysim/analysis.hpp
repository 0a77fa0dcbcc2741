#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hysim/simulator.hpp"

namespace hysim {

/// Equilibrium candidates of the constant-input dynamics: u1 is the largest u
/// with Gamma_l(u) = R, u2 the smallest u with Gamma_r(u) = R. Whenever both
/// exist, u1 <= u2.
struct EquilibriumPair {
  std::optional<CurvePreimage> u1;
  std::optional<CurvePreimage> u2;
  double R = 0.0;
};

/// |e(t)| <= R_inf + H_max; requires 0 < R_inf < H_max.
double error_bound(double R_inf, double H_max);

/// Inverts the aggregate envelopes at level R.
EquilibriumPair equilibria(const KpModel& model, double R);

struct LogErrorFit {
  double slope;      // 1/s, negative for decay
  double intercept;
  double r_squared;
  std::size_t samples;
};

/// Least-squares fit of ln|e(t)| over [t_begin, t_end]; samples with |e| at
/// the 1e-14 floor are dropped. Throws EstimationError when fewer than two
/// usable samples remain.
LogErrorFit fit_log_error(const Trace& trace, double t_begin, double t_end);

/// Slope of the fit above.
double convergence_rate(const Trace& trace, double t_begin, double t_end);

/// Max |e| over the final n_periods periods. The evaluation span must satisfy
/// |u(t) - u(t-T)| <= residual_tol (throws NotSteadyError with the measured
/// residual otherwise), and the trace must span at least (n_periods + 1) * T.
double steady_state_max_error(const Trace& trace, double T, int n_periods,
                              double residual_tol);

enum class OmegaLimit { converged_to_u1, converged_to_u2, between, not_converged };

/// Classifies the tail mean of u against [u1 - tol, u2 + tol]. The tail is
/// the last tail_fraction of the rows (at least 10); a tail still moving by
/// more than tol reports not_converged.
OmegaLimit omega_limit_check(const Trace& trace, const EquilibriumPair& eq, double tol,
                             double tail_fraction = 0.1);

struct SweepRow {
  double omega;       // rad/s
  double K;
  double max_abs_e;   // steady-state max |e|
  int periods_discarded;
  bool converged;
  double residual;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // sorted by (omega, K)
};

struct SweepOptions {
  double steady_rel_tol = 1e-6;       // residual tol = rel_tol * sup|r|
  int max_periods = 50;
  double stability_safety = 0.2;      // dt <= safety / (K * envelope Lipschitz)
  double min_steps_per_period = 1e5;  // dt <= T / this
  std::size_t max_rows_per_period = 100000;
};

/// find_periodic + steady-state error for every (omega, K) pair; cells run
/// concurrently, each on its own model clone. The per-cell step is scaled to
/// the period (and to explicit-Euler stability) so slow cells stay tractable.
/// Non-convergence is recorded in the row, not fatal.
SweepTable frequency_sweep(const SimConfig& base, std::span<const double> omegas,
                           std::span<const double> Ks, const SweepOptions& opts = {});

}  // namespace hysim
