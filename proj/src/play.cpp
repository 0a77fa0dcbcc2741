#include "hysim/play.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hysim {

namespace {

// gamma_r <= gamma_l must hold everywhere. On the union of both breakpoint
// sets the curves are piecewise linear between consecutive checked points, so
// pointwise checks there are exhaustive; the extension slopes settle the
// behavior at infinity.
void check_curve_order(const PiecewiseLinearCurve& gl, const PiecewiseLinearCurve& gr) {
  std::set<double> xs;
  for (const auto& p : gl.breakpoints()) xs.insert(p.x);
  for (const auto& p : gr.breakpoints()) xs.insert(p.x);
  for (double x : xs) {
    if (gr(x) > gl(x)) {
      throw std::invalid_argument("curve ordering violated: gamma_r > gamma_l");
    }
  }
  if (gr.right_slope() > gl.right_slope()) {
    throw std::invalid_argument("curve ordering violated for large inputs");
  }
  if (gr.left_slope() < gl.left_slope()) {
    throw std::invalid_argument("curve ordering violated for small inputs");
  }
}

}  // namespace

GeneralizedPlay::GeneralizedPlay(std::shared_ptr<const PiecewiseLinearCurve> gamma_l,
                                 std::shared_ptr<const PiecewiseLinearCurve> gamma_r)
    : gamma_l_(std::move(gamma_l)), gamma_r_(std::move(gamma_r)) {
  if (!gamma_l_ || !gamma_r_) throw std::invalid_argument("null boundary curve");
  check_curve_order(*gamma_l_, *gamma_r_);
}

GeneralizedPlay::GeneralizedPlay(PiecewiseLinearCurve gamma_l, PiecewiseLinearCurve gamma_r)
    : GeneralizedPlay(std::make_shared<const PiecewiseLinearCurve>(std::move(gamma_l)),
                      std::make_shared<const PiecewiseLinearCurve>(std::move(gamma_r))) {}

void GeneralizedPlay::init(double u0, double w0) {
  w_ = std::min((*gamma_l_)(u0), std::max((*gamma_r_)(u0), w0));
  initialized_ = true;
}

double GeneralizedPlay::update(double u) {
  if (!initialized_) throw std::logic_error("play operator used before init");
  w_ = std::min((*gamma_l_)(u), std::max((*gamma_r_)(u), w_));
  return w_;
}

std::vector<double> GeneralizedPlay::process(std::span<const double> inputs) {
  std::vector<double> out;
  out.reserve(inputs.size());
  for (double u : inputs) out.push_back(update(u));
  return out;
}

std::vector<double> GeneralizedPlay::replay(std::span<const double> inputs) const {
  GeneralizedPlay copy = *this;
  return copy.process(inputs);
}

double GeneralizedPlay::memory() const {
  if (!initialized_) throw std::logic_error("play operator used before init");
  return w_;
}

}  // namespace hysim
