#include "hysim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hysim {

PiecewiseLinearCurve::PiecewiseLinearCurve(std::vector<CurvePoint> breakpoints,
                                           Extension left_extension,
                                           Extension right_extension)
    : points_(std::move(breakpoints)), left_(left_extension), right_(right_extension) {
  if (points_.empty()) {
    throw std::invalid_argument("curve needs at least one breakpoint");
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("curve breakpoints must be finite");
    }
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].x < points_[i].x)) {
      throw std::invalid_argument("curve x-coordinates must be strictly increasing");
    }
    if (points_[i].y < points_[i - 1].y) {
      throw std::invalid_argument("curve y-coordinates must be non-decreasing");
    }
  }
  if (points_.size() < 2 &&
      (left_ == Extension::linear || right_ == Extension::linear)) {
    throw std::invalid_argument("linear extension needs at least two breakpoints");
  }
}

double PiecewiseLinearCurve::left_slope() const noexcept {
  if (left_ == Extension::constant || points_.size() < 2) return 0.0;
  const auto& a = points_[0];
  const auto& b = points_[1];
  return (b.y - a.y) / (b.x - a.x);
}

double PiecewiseLinearCurve::right_slope() const noexcept {
  if (right_ == Extension::constant || points_.size() < 2) return 0.0;
  const auto& a = points_[points_.size() - 2];
  const auto& b = points_.back();
  return (b.y - a.y) / (b.x - a.x);
}

double PiecewiseLinearCurve::operator()(double x) const {
  const auto& front = points_.front();
  const auto& back = points_.back();
  if (x <= front.x) {
    return front.y + left_slope() * (x - front.x);
  }
  if (x >= back.x) {
    return back.y + right_slope() * (x - back.x);
  }
  // first breakpoint strictly right of x
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const CurvePoint& p) { return v < p.x; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.y + t * (hi.y - lo.y);
}

double PiecewiseLinearCurve::lipschitz_constant() const {
  double best = std::max(left_slope(), right_slope());
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double slope =
        (points_[i].y - points_[i - 1].y) / (points_[i].x - points_[i - 1].x);
    best = std::max(best, slope);
  }
  return best;
}

double PiecewiseLinearCurve::modulus_of_continuity(double M, double h) const {
  if (!(M > 0.0)) throw std::invalid_argument("modulus_of_continuity: M must be > 0");
  if (!(h > 0.0)) throw std::invalid_argument("modulus_of_continuity: h must be > 0");
  if (h >= 2.0 * M) {
    return (*this)(M) - (*this)(-M);
  }
  // g(a) = f(a+h) - f(a) is piecewise linear in a; its kinks happen where a
  // or a+h crosses a breakpoint, so scanning those anchors is exact.
  const double lo = -M;
  const double hi = M - h;
  auto clampa = [&](double a) { return std::clamp(a, lo, hi); };
  double best = 0.0;
  auto consider = [&](double a) {
    best = std::max(best, (*this)(a + h) - (*this)(a));
  };
  consider(lo);
  consider(hi);
  for (const auto& p : points_) {
    consider(clampa(p.x));
    consider(clampa(p.x - h));
  }
  return best;
}

std::optional<CurvePreimage> PiecewiseLinearCurve::preimage_max(double y) const {
  const auto& front = points_.front();
  const auto& back = points_.back();
  if (y > back.y) {
    const double s = right_slope();
    if (s > 0.0) return CurvePreimage{back.x + (y - back.y) / s, false};
    return std::nullopt;
  }
  if (y == back.y) {
    if (right_slope() > 0.0) return CurvePreimage{back.x, false};
    return CurvePreimage{back.x, true};  // constant tail: no highest point
  }
  if (y < front.y) {
    const double s = left_slope();
    if (s > 0.0) return CurvePreimage{front.x + (y - front.y) / s, false};
    return std::nullopt;
  }
  // y in [front.y, back.y): last breakpoint with y_j <= y; the segment to its
  // right rises strictly through y.
  std::size_t j = points_.size() - 1;
  while (points_[j].y > y) --j;
  if (points_[j].y == y) return CurvePreimage{points_[j].x, false};
  const auto& a = points_[j];
  const auto& b = points_[j + 1];
  const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
  return CurvePreimage{x, false};
}

std::optional<CurvePreimage> PiecewiseLinearCurve::preimage_min(double y) const {
  const auto& front = points_.front();
  const auto& back = points_.back();
  if (y < front.y) {
    const double s = left_slope();
    if (s > 0.0) return CurvePreimage{front.x + (y - front.y) / s, false};
    return std::nullopt;
  }
  if (y == front.y) {
    if (left_slope() > 0.0) return CurvePreimage{front.x, false};
    return CurvePreimage{front.x, true};  // constant head: no lowest point
  }
  if (y > back.y) {
    const double s = right_slope();
    if (s > 0.0) return CurvePreimage{back.x + (y - back.y) / s, false};
    return std::nullopt;
  }
  // y in (front.y, back.y]: first breakpoint with y_j >= y.
  std::size_t j = 0;
  while (points_[j].y < y) ++j;
  if (points_[j].y == y) return CurvePreimage{points_[j].x, false};
  const auto& a = points_[j - 1];
  const auto& b = points_[j];
  const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
  return CurvePreimage{x, false};
}

double PiecewiseLinearCurve::range_min() const {
  if (!bounded_below()) throw std::domain_error("curve is unbounded below");
  return points_.front().y;
}

double PiecewiseLinearCurve::range_max() const {
  if (!bounded_above()) throw std::domain_error("curve is unbounded above");
  return points_.back().y;
}

PiecewiseLinearCurve PiecewiseLinearCurve::affine(double slope, double intercept) {
  if (slope < 0.0) throw std::invalid_argument("affine curve must be non-decreasing");
  if (slope == 0.0) {
    return PiecewiseLinearCurve({{0.0, intercept}});
  }
  return PiecewiseLinearCurve({{-1.0, intercept - slope}, {1.0, intercept + slope}},
                              Extension::linear, Extension::linear);
}

}  // namespace hysim
