#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hysim {

/// r(t) jumps from level_before to level_after at t_on. The only
/// non-Lipschitz variant; use a steep TableSignal ramp where the Lipschitz
/// hypothesis matters.
struct StepSignal {
  double t_on;
  double level_before = 0.0;
  double level_after;
};

/// r(t) = a1 t^n/(h^n + t^n) + a2/sqrt(2 pi sigma^2) exp(-(t-mu)^2/(2 sigma^2)) sin(omega t);
/// converges to a1 as t grows.
struct HillGaussSignal {
  double a1;
  double n;
  double h;
  double a2;
  double sigma;
  double mu;
  double omega;
};

/// r(t) = A0 + A sin(omega t + phi); A0 >= A >= 0 keeps r nonnegative.
struct SinusoidSignal {
  double A0;
  double A;
  double omega;  // rad/s
  double phi;    // rad
  double period() const;
};

/// Piecewise-linear table (t, r) with strictly increasing t; constant
/// continuation outside the table span.
struct TableSignal {
  std::vector<std::pair<double, double>> points;
};

using SignalSpec = std::variant<StepSignal, HillGaussSignal, SinusoidSignal, TableSignal>;

/// r(t) for t >= 0 (negative t is an argument error).
double eval(const SignalSpec& signal, double t);

/// Upper bound on |dr/dt| over [0, horizon]: analytic where available
/// (sinusoid: A*omega; table: max segment slope), a dense-grid max of the
/// derivative otherwise; +infinity for the step.
double lipschitz_bound(const SignalSpec& signal, double horizon,
                       double grid_dt = 1e-5);

/// 2*pi/omega for the sinusoid, nullopt for everything else.
std::optional<double> period(const SignalSpec& signal);

/// max |r| over [0, horizon]: exact for step/sinusoid/table, grid-sampled for
/// the Hill-Gaussian variant.
double sup_abs(const SignalSpec& signal, double horizon, double grid_dt = 1e-5);

}  // namespace hysim
