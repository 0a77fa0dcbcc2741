#include "hysim/kp_model.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace hysim {

GeneralizedPlay make_saturated_play(double rho, double lo, double hi, double scale) {
  if (!(rho >= 0.0)) throw std::invalid_argument("saturated play: rho must be >= 0");
  if (!(lo < hi)) throw std::invalid_argument("saturated play: lo must be < hi");
  if (!(scale > 0.0)) throw std::invalid_argument("saturated play: scale must be > 0");
  PiecewiseLinearCurve gl({{lo - rho, scale * lo}, {hi - rho, scale * hi}});
  PiecewiseLinearCurve gr({{lo + rho, scale * lo}, {hi + rho, scale * hi}});
  return GeneralizedPlay(std::move(gl), std::move(gr));
}

KpModel::KpModel(std::vector<PlayElement> elements, double offset)
    : elements_(std::move(elements)), offset_(offset) {
  if (elements_.empty()) throw std::invalid_argument("model needs at least one element");
  for (const auto& e : elements_) {
    if (!(e.weight >= 0.0)) {
      throw std::invalid_argument("element weights must be nonnegative");
    }
  }
}

double KpModel::init(double u0, const std::vector<double>& w0_elements) {
  if (w0_elements.size() != elements_.size()) {
    throw std::invalid_argument("one initial memory per element required");
  }
  double sum = offset_;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    elements_[i].play.init(u0, w0_elements[i]);
    sum += elements_[i].weight * elements_[i].play.memory();
  }
  initialized_ = true;
  return sum;
}

double KpModel::init_virgin(double u0) {
  return init(u0, std::vector<double>(elements_.size(), 0.0));
}

double KpModel::init(double u0, const InitialMemory& w0) {
  if (std::holds_alternative<VirginMemory>(w0)) return init_virgin(u0);
  return init(u0, std::get<std::vector<double>>(w0));
}

double KpModel::update(double u) {
  if (!initialized_) throw std::logic_error("model used before init");
  double sum = offset_;
  for (auto& e : elements_) {
    sum += e.weight * e.play.update(u);
  }
  return sum;
}

double KpModel::output() const {
  if (!initialized_) throw std::logic_error("model used before init");
  double sum = offset_;
  for (const auto& e : elements_) {
    sum += e.weight * e.play.memory();
  }
  return sum;
}

namespace {

PiecewiseLinearCurve weighted_sum(const std::vector<PlayElement>& elements,
                                  double offset, bool left_branch) {
  auto curve_of = [&](const PlayElement& e) -> const PiecewiseLinearCurve& {
    return left_branch ? e.play.gamma_l() : e.play.gamma_r();
  };

  std::set<double> xs;
  double left_slope = 0.0;
  double right_slope = 0.0;
  for (const auto& e : elements) {
    const auto& c = curve_of(e);
    for (const auto& p : c.breakpoints()) xs.insert(p.x);
    left_slope += e.weight * c.left_slope();
    right_slope += e.weight * c.right_slope();
  }

  // Beyond the union hull every summand is already in its extension regime,
  // so the sum is linear there; a synthetic breakpoint pins that slope when
  // it is nonzero.
  if (left_slope != 0.0) xs.insert(*xs.begin() - 1.0);
  if (right_slope != 0.0) xs.insert(*xs.rbegin() + 1.0);

  std::vector<CurvePoint> pts;
  pts.reserve(xs.size());
  for (double x : xs) {
    double y = offset;
    for (const auto& e : elements) y += e.weight * curve_of(e)(x);
    pts.push_back({x, y});
  }
  const Extension left = left_slope != 0.0 ? Extension::linear : Extension::constant;
  const Extension right = right_slope != 0.0 ? Extension::linear : Extension::constant;
  return PiecewiseLinearCurve(std::move(pts), left, right);
}

}  // namespace

std::pair<PiecewiseLinearCurve, PiecewiseLinearCurve> KpModel::aggregate_envelopes() const {
  return {weighted_sum(elements_, offset_, true), weighted_sum(elements_, offset_, false)};
}

std::pair<double, double> KpModel::output_range() const {
  double lo = offset_;
  double hi = offset_;
  for (const auto& e : elements_) {
    if (!e.play.gamma_r().bounded_below() || !e.play.gamma_l().bounded_above()) {
      throw std::domain_error("output range unbounded: element curves must saturate");
    }
    lo += e.weight * e.play.gamma_r().range_min();
    hi += e.weight * e.play.gamma_l().range_max();
  }
  return {lo, hi};
}

}  // namespace hysim
