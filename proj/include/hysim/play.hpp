#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hysim/curve.hpp"

namespace hysim {

/// Rate-independent memory operator defined by two boundary curves
/// gamma_r <= gamma_l. The memory value w is the previous memory clamped
/// into [gamma_r(u), gamma_l(u)] at every new input sample, which is exact
/// for inputs that are linear (hence monotone) between consecutive samples.
///
/// Instances are single-threaded; copies are cheap (curves are shared,
/// immutable) and fully independent.
class GeneralizedPlay {
 public:
  GeneralizedPlay(std::shared_ptr<const PiecewiseLinearCurve> gamma_l,
                  std::shared_ptr<const PiecewiseLinearCurve> gamma_r);
  GeneralizedPlay(PiecewiseLinearCurve gamma_l, PiecewiseLinearCurve gamma_r);

  /// Sets w = min(gamma_l(u0), max(gamma_r(u0), w0)); a w0 already inside the
  /// band is kept as-is, values outside are clipped to the violated bound.
  void init(double u0, double w0);

  /// w <- min(gamma_l(u), max(gamma_r(u), w)); returns the new memory.
  double update(double u);

  /// Folds update over the sequence (mutates this instance).
  std::vector<double> process(std::span<const double> inputs);

  /// Pure batch variant: replays the inputs on a copy of the state.
  std::vector<double> replay(std::span<const double> inputs) const;

  bool initialized() const noexcept { return initialized_; }
  double memory() const;

  const PiecewiseLinearCurve& gamma_l() const noexcept { return *gamma_l_; }
  const PiecewiseLinearCurve& gamma_r() const noexcept { return *gamma_r_; }
  std::shared_ptr<const PiecewiseLinearCurve> gamma_l_ptr() const noexcept { return gamma_l_; }
  std::shared_ptr<const PiecewiseLinearCurve> gamma_r_ptr() const noexcept { return gamma_r_; }

 private:
  std::shared_ptr<const PiecewiseLinearCurve> gamma_l_;
  std::shared_ptr<const PiecewiseLinearCurve> gamma_r_;
  double w_ = 0.0;
  bool initialized_ = false;
};

}  // namespace hysim
