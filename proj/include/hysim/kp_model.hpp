#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "hysim/play.hpp"

namespace hysim {

/// One weighted saturated play branch of the parallel sum.
struct PlayElement {
  double weight;  // must be >= 0 to keep the aggregate monotone
  GeneralizedPlay play;
};

/// Boundary curve pair of a saturated play element:
///   gamma_l(u) = scale * clamp(u + rho, lo, hi)
///   gamma_r(u) = scale * clamp(u - rho, lo, hi)
/// with constant extensions on both sides.
GeneralizedPlay make_saturated_play(double rho, double lo, double hi, double scale = 1.0);

/// Element memories start from zero clamped into each band at u0.
struct VirginMemory {};
using InitialMemory = std::variant<VirginMemory, std::vector<double>>;

/// Weighted parallel sum of play elements plus an offset. The aggregate
/// output is offset + sum(a_i * w_i); with saturating element curves it is
/// confined to output_range() along any trajectory.
class KpModel {
 public:
  KpModel(std::vector<PlayElement> elements, double offset);

  /// Initializes every element and returns the aggregate output.
  double init(double u0, const std::vector<double>& w0_elements);
  double init_virgin(double u0);
  double init(double u0, const InitialMemory& w0);

  /// Updates every element with u and returns the aggregate output.
  double update(double u);

  double output() const;
  bool initialized() const noexcept { return initialized_; }

  /// Envelope curves Gamma_l, Gamma_r of the aggregate, built on the union of
  /// all element breakpoints.
  std::pair<PiecewiseLinearCurve, PiecewiseLinearCurve> aggregate_envelopes() const;

  /// (min, max) attainable aggregate output. Requires every element curve to
  /// saturate on both sides.
  std::pair<double, double> output_range() const;

  const std::vector<PlayElement>& elements() const noexcept { return elements_; }
  double offset() const noexcept { return offset_; }

 private:
  std::vector<PlayElement> elements_;
  double offset_;
  bool initialized_ = false;
};

}  // namespace hysim
