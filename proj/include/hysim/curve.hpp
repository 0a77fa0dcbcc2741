#pragma once

#include <optional>
#include <vector>

namespace hysim {

/// Behavior of a piecewise-linear curve outside its breakpoint hull.
/// `constant` holds the end value; `linear` continues the end segment's slope.
enum class Extension { constant, linear };

struct CurvePoint {
  double x;
  double y;
};

/// Result of a level-set query. `unbounded` is set when the level equals a
/// constant tail of the curve, so the extreme point does not exist and the
/// reported x is the last breakpoint of the flat tail instead.
struct CurvePreimage {
  double x;
  bool unbounded = false;
};

/// Non-decreasing piecewise-linear scalar function. Immutable after
/// construction; validation happens once in the constructor. Evaluation is
/// O(log n) in the number of breakpoints.
class PiecewiseLinearCurve {
 public:
  PiecewiseLinearCurve(std::vector<CurvePoint> breakpoints,
                       Extension left_extension = Extension::constant,
                       Extension right_extension = Extension::constant);

  /// f(x): interpolation inside the hull, extension rule outside.
  double operator()(double x) const;

  /// Max slope over segments, extension slopes included.
  double lipschitz_constant() const;

  /// Exact sup of f(y1)-f(y2) over y1,y2 in [-M,M] with |y1-y2| <= h.
  /// Requires M > 0 and h > 0.
  double modulus_of_continuity(double M, double h) const;

  /// Largest x with f(x) = y (right endpoint of flat level sets), or nullopt
  /// when y is outside the range. When y equals a constant right tail, the
  /// level set is unbounded: the last breakpoint is returned with the
  /// `unbounded` flag set.
  std::optional<CurvePreimage> preimage_max(double y) const;

  /// Smallest x with f(x) = y; mirror of preimage_max.
  std::optional<CurvePreimage> preimage_min(double y) const;

  const std::vector<CurvePoint>& breakpoints() const noexcept { return points_; }
  Extension left_extension() const noexcept { return left_; }
  Extension right_extension() const noexcept { return right_; }

  /// Slope used left/right of the hull (0 for constant extensions).
  double left_slope() const noexcept;
  double right_slope() const noexcept;

  bool bounded_below() const noexcept { return left_slope() == 0.0; }
  bool bounded_above() const noexcept { return right_slope() == 0.0; }

  /// inf/sup of the curve's range; only defined when the matching side is
  /// bounded (throws std::domain_error otherwise).
  double range_min() const;
  double range_max() const;

  /// The affine function slope*x + intercept as a curve (linear extensions).
  static PiecewiseLinearCurve affine(double slope, double intercept);

 private:
  std::vector<CurvePoint> points_;
  Extension left_;
  Extension right_;
};

}  // namespace hysim
