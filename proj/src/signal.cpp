#include "hysim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hysim {

namespace {

double hill_gauss_value(const HillGaussSignal& s, double t) {
  const double tn = std::pow(t, s.n);
  const double hill = s.a1 * tn / (std::pow(s.h, s.n) + tn);
  const double norm = s.a2 / std::sqrt(2.0 * std::numbers::pi * s.sigma * s.sigma);
  const double z = (t - s.mu) / s.sigma;
  const double bump = norm * std::exp(-0.5 * z * z) * std::sin(s.omega * t);
  return hill + bump;
}

double hill_gauss_derivative(const HillGaussSignal& s, double t) {
  const double hn = std::pow(s.h, s.n);
  const double tn = std::pow(t, s.n);
  const double denom = hn + tn;
  const double hill_d =
      t > 0.0 ? s.a1 * s.n * hn * std::pow(t, s.n - 1.0) / (denom * denom) : 0.0;
  const double norm = s.a2 / std::sqrt(2.0 * std::numbers::pi * s.sigma * s.sigma);
  const double z = (t - s.mu) / s.sigma;
  const double env = norm * std::exp(-0.5 * z * z);
  const double bump_d = env * (s.omega * std::cos(s.omega * t) -
                               (t - s.mu) / (s.sigma * s.sigma) * std::sin(s.omega * t));
  return hill_d + bump_d;
}

double table_value(const TableSignal& s, double t) {
  const auto& pts = s.points;
  if (t <= pts.front().first) return pts.front().second;
  if (t >= pts.back().first) return pts.back().second;
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double a = (t - lo.first) / (hi.first - lo.first);
  return lo.second + a * (hi.second - lo.second);
}

void validate_table(const TableSignal& s) {
  if (s.points.empty()) throw std::invalid_argument("table signal needs points");
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    if (!(s.points[i - 1].first < s.points[i].first)) {
      throw std::invalid_argument("table times must be strictly increasing");
    }
  }
}

}  // namespace

double SinusoidSignal::period() const { return 2.0 * std::numbers::pi / omega; }

double eval(const SignalSpec& signal, double t) {
  if (t < 0.0) throw std::invalid_argument("signal evaluated at t < 0");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StepSignal>) {
          return t < s.t_on ? s.level_before : s.level_after;
        } else if constexpr (std::is_same_v<T, HillGaussSignal>) {
          return hill_gauss_value(s, t);
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          return s.A0 + s.A * std::sin(s.omega * t + s.phi);
        } else {
          validate_table(s);
          return table_value(s, t);
        }
      },
      signal);
}

double lipschitz_bound(const SignalSpec& signal, double horizon, double grid_dt) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StepSignal>) {
          return std::numeric_limits<double>::infinity();
        } else if constexpr (std::is_same_v<T, HillGaussSignal>) {
          double best = 0.0;
          const auto steps = static_cast<std::size_t>(std::ceil(horizon / grid_dt));
          for (std::size_t k = 0; k <= steps; ++k) {
            const double t = std::min(horizon, static_cast<double>(k) * grid_dt);
            best = std::max(best, std::abs(hill_gauss_derivative(s, t)));
          }
          return best;
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          return std::abs(s.A) * std::abs(s.omega);
        } else {
          validate_table(s);
          double best = 0.0;
          for (std::size_t i = 1; i < s.points.size(); ++i) {
            const double slope = (s.points[i].second - s.points[i - 1].second) /
                                 (s.points[i].first - s.points[i - 1].first);
            best = std::max(best, std::abs(slope));
          }
          return best;
        }
      },
      signal);
}

std::optional<double> period(const SignalSpec& signal) {
  if (const auto* s = std::get_if<SinusoidSignal>(&signal)) return s->period();
  return std::nullopt;
}

double sup_abs(const SignalSpec& signal, double horizon, double grid_dt) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StepSignal>) {
          return std::max(std::abs(s.level_before),
                          s.t_on <= horizon ? std::abs(s.level_after) : 0.0);
        } else if constexpr (std::is_same_v<T, HillGaussSignal>) {
          double best = 0.0;
          const auto steps = static_cast<std::size_t>(std::ceil(horizon / grid_dt));
          for (std::size_t k = 0; k <= steps; ++k) {
            const double t = std::min(horizon, static_cast<double>(k) * grid_dt);
            best = std::max(best, std::abs(hill_gauss_value(s, t)));
          }
          return std::max(best, std::abs(s.a1));
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          // extremes at the crest/trough if a quarter period fits, at the
          // endpoints otherwise
          double best = std::max(std::abs(eval(signal, 0.0)),
                                 std::abs(s.A0 + s.A * std::sin(s.omega * horizon + s.phi)));
          const double T = s.period();
          if (s.omega <= 0.0 || horizon >= T) {
            return std::max(std::abs(s.A0 + s.A), std::abs(s.A0 - s.A));
          }
          // scan stationary points omega t + phi = pi/2 + k pi inside [0, horizon]
          const double pi = std::numbers::pi;
          double k0 = std::ceil((s.omega * 0.0 + s.phi - pi / 2.0) / pi);
          for (double k = k0;; k += 1.0) {
            const double t = (pi / 2.0 + k * pi - s.phi) / s.omega;
            if (t > horizon) break;
            if (t >= 0.0) best = std::max(best, std::abs(s.A0 + s.A * std::sin(s.omega * t + s.phi)));
          }
          return best;
        } else {
          validate_table(s);
          double best = 0.0;
          for (const auto& p : s.points) best = std::max(best, std::abs(p.second));
          return best;
        }
      },
      signal);
}

}  // namespace hysim
