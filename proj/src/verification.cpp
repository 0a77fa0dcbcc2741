#include "hysim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hysim {

void PiecewiseLinearInput::validate() const {
  if (points.empty()) throw std::invalid_argument("input needs at least one point");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].first < points[i].first)) {
      throw std::invalid_argument("input times must be strictly increasing");
    }
  }
}

double PiecewiseLinearInput::eval(double t) const {
  if (t <= points.front().first) return points.front().second;
  if (t >= points.back().first) return points.back().second;
  auto it = std::upper_bound(points.begin(), points.end(), t,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double a = (t - lo.first) / (hi.first - lo.first);
  return lo.second + a * (hi.second - lo.second);
}

namespace {

double clamp_step(const PiecewiseLinearCurve& gl, const PiecewiseLinearCurve& gr,
                  double u, double w) {
  return std::min(gl(u), std::max(gr(u), w));
}

}  // namespace

std::vector<double> oracle_play(const PiecewiseLinearInput& input,
                                const PiecewiseLinearCurve& gamma_l,
                                const PiecewiseLinearCurve& gamma_r, double w0,
                                int refinement) {
  input.validate();
  if (refinement < 1) throw std::invalid_argument("refinement must be >= 1");

  std::vector<double> out;
  out.reserve(input.points.size());
  double w = clamp_step(gamma_l, gamma_r, input.points.front().second, w0);
  out.push_back(w);
  for (std::size_t i = 1; i < input.points.size(); ++i) {
    const double u_prev = input.points[i - 1].second;
    const double u_next = input.points[i].second;
    for (int j = 1; j <= refinement; ++j) {
      const double u =
          u_prev + (u_next - u_prev) * static_cast<double>(j) / refinement;
      w = clamp_step(gamma_l, gamma_r, u, w);
    }
    out.push_back(w);
  }
  return out;
}

VisintinReport check_visintin_inequality(const PiecewiseLinearInput& input1,
                                         const PiecewiseLinearInput& input2,
                                         const PiecewiseLinearCurve& gamma_l,
                                         const PiecewiseLinearCurve& gamma_r,
                                         double w01, double w02, double t1, double t2,
                                         int refinement) {
  input1.validate();
  input2.validate();
  if (refinement < 1) throw std::invalid_argument("refinement must be >= 1");
  constexpr double kHullTol = 1e-12;
  if (std::abs(input1.t_begin() - input2.t_begin()) > kHullTol ||
      std::abs(input1.t_end() - input2.t_end()) > kHullTol) {
    throw std::invalid_argument("inputs must share the time hull");
  }
  if (!(t1 < t2) || t1 < input1.t_begin() - kHullTol ||
      t2 > input1.t_end() + kHullTol) {
    throw std::invalid_argument("[t1, t2] must lie inside the hull");
  }

  // A grid refining both inputs' segmentations keeps the recurrence exact;
  // t1 and t2 are inserted so both ends are sampled.
  std::set<double> grid;
  auto add_refined = [&](const PiecewiseLinearInput& in) {
    for (std::size_t i = 0; i < in.points.size(); ++i) {
      grid.insert(in.points[i].first);
      if (i + 1 < in.points.size()) {
        const double a = in.points[i].first;
        const double b = in.points[i + 1].first;
        for (int j = 1; j < refinement; ++j) {
          grid.insert(a + (b - a) * static_cast<double>(j) / refinement);
        }
      }
    }
  };
  add_refined(input1);
  add_refined(input2);
  grid.insert(std::clamp(t1, input1.t_begin(), input1.t_end()));
  grid.insert(std::clamp(t2, input1.t_begin(), input1.t_end()));

  double w1 = clamp_step(gamma_l, gamma_r, input1.eval(*grid.begin()), w01);
  double w2 = clamp_step(gamma_l, gamma_r, input2.eval(*grid.begin()), w02);

  VisintinReport rep{};
  rep.M = 0.0;
  rep.lhs = 0.0;
  rep.input_gap = 0.0;
  bool gap_at_t1_set = false;
  for (double t : grid) {
    const double u1 = input1.eval(t);
    const double u2 = input2.eval(t);
    w1 = clamp_step(gamma_l, gamma_r, u1, w1);
    w2 = clamp_step(gamma_l, gamma_r, u2, w2);
    rep.M = std::max({rep.M, std::abs(u1), std::abs(u2)});
    if (t >= t1 - kHullTol && t <= t2 + kHullTol) {
      if (!gap_at_t1_set) {
        rep.gap_at_t1 = std::abs(w1 - w2);
        gap_at_t1_set = true;
      }
      rep.lhs = std::max(rep.lhs, std::abs(w1 - w2));
      rep.input_gap = std::max(rep.input_gap, std::abs(u1 - u2));
    }
  }

  rep.modulus_term = 0.0;
  if (rep.input_gap > 0.0 && rep.M > 0.0) {
    rep.modulus_term = std::max(gamma_l.modulus_of_continuity(rep.M, rep.input_gap),
                                gamma_r.modulus_of_continuity(rep.M, rep.input_gap));
  }
  rep.rhs = std::max(rep.gap_at_t1, rep.modulus_term);
  rep.holds = rep.lhs <= rep.rhs + 1e-12;
  return rep;
}

bool check_rate_independence(const PiecewiseLinearCurve& gamma_l,
                             const PiecewiseLinearCurve& gamma_r, double w0,
                             const PiecewiseLinearInput& input,
                             const std::vector<std::pair<double, double>>& reparam,
                             int refinement, double tol) {
  input.validate();
  if (reparam.size() < 2) throw std::invalid_argument("reparam needs >= 2 points");
  for (std::size_t i = 1; i < reparam.size(); ++i) {
    if (!(reparam[i - 1].first < reparam[i].first) ||
        !(reparam[i - 1].second < reparam[i].second)) {
      throw std::invalid_argument("reparam must be strictly increasing");
    }
  }
  constexpr double kEndTol = 1e-12;
  if (std::abs(reparam.front().first - input.t_begin()) > kEndTol ||
      std::abs(reparam.back().first - input.t_end()) > kEndTol ||
      std::abs(reparam.front().second - input.t_begin()) > kEndTol ||
      std::abs(reparam.back().second - input.t_end()) > kEndTol) {
    throw std::invalid_argument("reparam must fix the endpoints");
  }

  PiecewiseLinearInput warp_map{reparam};
  PiecewiseLinearInput warped;
  warped.points.reserve(input.points.size());
  for (const auto& [t, u] : input.points) {
    warped.points.emplace_back(warp_map.eval(t), u);
  }

  const auto base = oracle_play(input, gamma_l, gamma_r, w0, refinement);
  const auto after = oracle_play(warped, gamma_l, gamma_r, w0, refinement);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (std::abs(base[i] - after[i]) > tol) return false;
  }
  return true;
}

NonExpansiveReport check_poincare_nonexpansive(
    const SimConfig& config, std::span<const std::pair<double, double>> u0_pairs,
    double tol) {
  const auto p = period(config.signal);
  if (!p) throw std::invalid_argument("non-expansiveness check needs a periodic signal");
  const double T = *p;

  NonExpansiveReport report;
  report.all_ok = true;
  for (const auto& [a, b] : u0_pairs) {
    // One admissible memory for both runs, when the bands at u0_a and u0_b
    // intersect: that is the hypothesis the pointwise contraction rests on.
    const double u_lo = std::min(a, b);
    const double u_hi = std::max(a, b);
    std::vector<double> shared_w0;
    bool shared = true;
    for (const auto& e : config.model.elements()) {
      const double lo = e.play.gamma_r()(u_hi);
      const double hi = e.play.gamma_l()(u_lo);
      if (lo > hi) {
        shared = false;
        break;
      }
      shared_w0.push_back(std::min(hi, std::max(lo, 0.0)));
    }
    const InitialMemory w0 = shared ? InitialMemory{shared_w0} : config.w0;

    SimConfig ca = config;
    ca.u0 = a;
    ca.t_end = T;
    ca.w0 = w0;
    SimConfig cb = ca;
    cb.u0 = b;

    const Trace ta = simulate(ca);
    const Trace tb = simulate(cb);

    PairCheck pc{};
    pc.u0_a = a;
    pc.u0_b = b;
    pc.shared_memory = shared;
    pc.gap_start = std::abs(a - b);

    KpModel ma = config.model;
    ma.init(a, w0);
    KpModel mb = config.model;
    mb.init(b, w0);
    const double pa = poincare_map(ca, std::move(ma), a, T).u_end;
    const double pb = poincare_map(cb, std::move(mb), b, T).u_end;
    pc.gap_end = std::abs(pa - pb);
    pc.endpoint_ok = pc.gap_end <= pc.gap_start + tol;

    pc.pointwise_violations = 0;
    pc.worst_excess = 0.0;
    const std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double gap = std::abs(ta.u[i] - tb.u[i]);
      if (gap > pc.gap_start + tol) ++pc.pointwise_violations;
      pc.worst_excess = std::max(pc.worst_excess, gap - pc.gap_start);
    }

    if (!pc.endpoint_ok || (shared && pc.pointwise_violations > 0)) {
      report.all_ok = false;
    }
    report.pairs.push_back(pc);
  }
  return report;
}

// --- random generators ------------------------------------------------------

CurvePair random_curve_pair(Rng& rng) {
  const int k = rng.uniform_int(2, 7);
  std::vector<double> xs(k);
  xs[0] = rng.uniform(-4.0, -1.0);
  for (int i = 1; i < k; ++i) xs[i] = xs[i - 1] + rng.uniform(0.1, 1.5);

  std::vector<double> yl(k);
  yl[0] = rng.uniform(-2.0, 0.0);
  for (int i = 1; i < k; ++i) {
    const double step = rng.chance(0.3) ? 0.0 : rng.uniform(0.05, 1.5);
    yl[i] = yl[i - 1] + step;
  }

  // gamma_r stays below gamma_l on the shared grid; linear interpolation
  // preserves the ordering between grid points.
  std::vector<double> yr(k);
  yr[0] = yl[0] - (rng.chance(0.3) ? 0.0 : rng.uniform(0.0, 1.5));
  for (int i = 1; i < k; ++i) {
    const double gap = rng.chance(0.3) ? 0.0 : rng.uniform(0.0, 1.5);
    yr[i] = std::max(yr[i - 1], yl[i] - gap);
  }

  std::vector<CurvePoint> pl(k), pr(k);
  for (int i = 0; i < k; ++i) {
    pl[i] = {xs[i], yl[i]};
    pr[i] = {xs[i], yr[i]};
  }
  return {std::make_shared<const PiecewiseLinearCurve>(std::move(pl)),
          std::make_shared<const PiecewiseLinearCurve>(std::move(pr))};
}

PiecewiseLinearInput random_input(Rng& rng, int min_points, int max_points) {
  const int m = rng.uniform_int(min_points, max_points);
  PiecewiseLinearInput input;
  input.points.reserve(m);
  double t = 0.0;
  for (int i = 0; i < m; ++i) {
    input.points.emplace_back(t, rng.uniform(-3.0, 3.0));
    t += rng.uniform(0.05, 1.0);
  }
  return input;
}

std::pair<PiecewiseLinearInput, PiecewiseLinearInput> random_input_pair(Rng& rng) {
  PiecewiseLinearInput a = random_input(rng);
  PiecewiseLinearInput b = a;
  for (auto& [t, u] : b.points) u = rng.uniform(-3.0, 3.0);
  return {std::move(a), std::move(b)};
}

// --- campaigns --------------------------------------------------------------

CampaignReport run_oracle_equivalence_campaign(int cases, std::uint64_t seed) {
  Rng rng(seed);
  CampaignReport report;
  report.name = "oracle_equivalence";
  report.seed = seed;
  report.cases = cases;
  report.records.reserve(cases);

  for (int c = 0; c < cases; ++c) {
    const CurvePair curves = random_curve_pair(rng);
    const PiecewiseLinearInput input = random_input(rng);
    const double u0 = input.points.front().second;
    const double w0 = rng.uniform((*curves.gamma_r)(u0) - 1.0, (*curves.gamma_l)(u0) + 1.0);
    const int refinement = rng.uniform_int(1, 5);

    const auto expected =
        oracle_play(input, *curves.gamma_l, *curves.gamma_r, w0, refinement);

    GeneralizedPlay play(curves.gamma_l, curves.gamma_r);
    play.init(u0, w0);
    double dev = std::abs(play.memory() - expected.front());
    for (std::size_t i = 1; i < input.points.size(); ++i) {
      dev = std::max(dev, std::abs(play.update(input.points[i].second) - expected[i]));
    }

    const bool pass = dev <= 1e-12;
    if (!pass) ++report.violations;
    report.worst_metric = std::max(report.worst_metric, dev);
    report.records.push_back({c, pass, dev});
  }
  return report;
}

CampaignReport run_visintin_campaign(int cases, std::uint64_t seed) {
  Rng rng(seed);
  CampaignReport report;
  report.name = "visintin_inequality";
  report.seed = seed;
  report.cases = cases;
  report.records.reserve(cases);
  report.worst_metric = -1e300;

  for (int c = 0; c < cases; ++c) {
    const CurvePair curves = random_curve_pair(rng);
    auto [in1, in2] = random_input_pair(rng);
    const double u01 = in1.points.front().second;
    const double u02 = in2.points.front().second;
    const double w01 = rng.uniform((*curves.gamma_r)(u01), (*curves.gamma_l)(u01));
    const double w02 = rng.uniform((*curves.gamma_r)(u02), (*curves.gamma_l)(u02));

    const double hull = in1.t_end() - in1.t_begin();
    const double t1 = in1.t_begin() + rng.uniform(0.0, 0.5) * hull;
    const double t2 = t1 + rng.uniform(0.05, 1.0) * (in1.t_end() - t1);

    const auto rep = check_visintin_inequality(in1, in2, *curves.gamma_l,
                                               *curves.gamma_r, w01, w02, t1, t2);
    const double slack = rep.lhs - rep.rhs;
    if (!rep.holds) ++report.violations;
    report.worst_metric = std::max(report.worst_metric, slack);
    report.records.push_back({c, rep.holds, slack});
  }
  return report;
}

CampaignReport run_rate_independence_campaign(int cases, std::uint64_t seed) {
  Rng rng(seed);
  CampaignReport report;
  report.name = "rate_independence";
  report.seed = seed;
  report.cases = cases;
  report.records.reserve(cases);

  for (int c = 0; c < cases; ++c) {
    const CurvePair curves = random_curve_pair(rng);
    const PiecewiseLinearInput input = random_input(rng);
    const double u0 = input.points.front().second;
    const double w0 = rng.uniform((*curves.gamma_r)(u0) - 1.0, (*curves.gamma_l)(u0) + 1.0);

    // random interior warp anchors, endpoints fixed
    const int warps = rng.uniform_int(1, 4);
    std::vector<double> t_old(warps), t_new(warps);
    for (int i = 0; i < warps; ++i) {
      t_old[i] = rng.uniform(input.t_begin(), input.t_end());
      t_new[i] = rng.uniform(input.t_begin(), input.t_end());
    }
    std::sort(t_old.begin(), t_old.end());
    std::sort(t_new.begin(), t_new.end());
    std::vector<std::pair<double, double>> reparam;
    reparam.emplace_back(input.t_begin(), input.t_begin());
    for (int i = 0; i < warps; ++i) {
      if (t_old[i] > reparam.back().first + 1e-9 && t_new[i] > reparam.back().second + 1e-9 &&
          t_old[i] < input.t_end() - 1e-9 && t_new[i] < input.t_end() - 1e-9) {
        reparam.emplace_back(t_old[i], t_new[i]);
      }
    }
    reparam.emplace_back(input.t_end(), input.t_end());

    const bool pass = check_rate_independence(*curves.gamma_l, *curves.gamma_r, w0,
                                              input, reparam);
    if (!pass) ++report.violations;
    report.records.push_back({c, pass, pass ? 0.0 : 1.0});
    report.worst_metric = std::max(report.worst_metric, pass ? 0.0 : 1.0);
  }
  return report;
}

}  // namespace hysim
