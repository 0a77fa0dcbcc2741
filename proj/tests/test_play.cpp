#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hysim/play.hpp"
#include "hysim/verification.hpp"

using namespace hysim;

namespace {

// classical play with half-width rho: gamma_l = u + rho, gamma_r = u - rho
GeneralizedPlay classical_play(double rho) {
  return GeneralizedPlay(PiecewiseLinearCurve::affine(1.0, rho),
                         PiecewiseLinearCurve::affine(1.0, -rho));
}

}  // namespace

TEST_CASE("play rejects misordered curves and uninitialized use") {
  CHECK_THROWS_AS(GeneralizedPlay(PiecewiseLinearCurve::affine(1.0, -1.0),
                                  PiecewiseLinearCurve::affine(1.0, 1.0)),
                  std::invalid_argument);
  // slopes cross at large u
  CHECK_THROWS_AS(GeneralizedPlay(PiecewiseLinearCurve({{0.0, 0.0}, {1.0, 1.0}}),
                                  PiecewiseLinearCurve::affine(1.0, -5.0)),
                  std::invalid_argument);

  auto play = classical_play(1.0);
  CHECK_THROWS_AS(play.update(0.0), std::logic_error);
}

TEST_CASE("play init clips the initial memory into the band") {
  auto play = classical_play(1.0);
  play.init(0.0, 0.0);
  CHECK(play.memory() == 0.0);  // interior memory kept
  play.init(0.0, 5.0);
  CHECK(play.memory() == 1.0);  // clipped to gamma_l(0)
  play.init(0.0, -5.0);
  CHECK(play.memory() == -1.0);  // clipped to gamma_r(0)
}

TEST_CASE("play update recurrence") {
  auto play = classical_play(1.0);
  play.init(0.0, 0.0);
  CHECK(play.update(0.0) == 0.0);  // no motion inside the band
  play.init(0.0, 0.0);
  CHECK(play.update(3.0) == 2.0);  // min(4, max(2, 0))
  play.init(0.0, 0.0);
  CHECK(play.update(-3.0) == -2.0);  // min(-2, max(-4, 0))
}

TEST_CASE("play process folds the recurrence") {
  auto play = classical_play(1.0);
  play.init(0.0, 0.0);
  const std::vector<double> inputs = {0.0, 3.0, 0.0};
  const auto out = play.process(inputs);
  CHECK(out == std::vector<double>{0.0, 2.0, 1.0});
  CHECK(play.memory() == 1.0);

  const auto empty = play.process({});
  CHECK(empty.empty());
  CHECK(play.memory() == 1.0);

  play.init(0.0, 0.0);
  const auto constant = play.process(std::vector<double>{2.0, 2.0, 2.0, 2.0});
  for (double w : constant) CHECK(w == constant.front());
}

TEST_CASE("replay leaves the state untouched") {
  auto play = classical_play(0.5);
  play.init(0.0, 0.0);
  const auto out = play.replay(std::vector<double>{3.0, -3.0});
  CHECK(out.size() == 2);
  CHECK(play.memory() == 0.0);
}

TEST_CASE("band confinement after every update") {
  Rng rng(23);
  for (int c = 0; c < 50; ++c) {
    const auto curves = random_curve_pair(rng);
    GeneralizedPlay play(curves.gamma_l, curves.gamma_r);
    const double u0 = rng.uniform(-4.0, 4.0);
    play.init(u0, rng.uniform(-5.0, 5.0));
    CHECK(play.memory() >= (*curves.gamma_r)(u0) - 1e-15);
    CHECK(play.memory() <= (*curves.gamma_l)(u0) + 1e-15);
    for (int i = 0; i < 100; ++i) {
      const double u = rng.uniform(-5.0, 5.0);
      const double w = play.update(u);
      CHECK(w >= (*curves.gamma_r)(u) - 1e-15);
      CHECK(w <= (*curves.gamma_l)(u) + 1e-15);
    }
  }
}

TEST_CASE("duplicate samples do not move the memory") {
  Rng rng(29);
  for (int c = 0; c < 30; ++c) {
    const auto curves = random_curve_pair(rng);
    std::vector<double> base(12);
    for (auto& u : base) u = rng.uniform(-4.0, 4.0);

    GeneralizedPlay a(curves.gamma_l, curves.gamma_r);
    a.init(base.front(), 0.0);
    const auto out_a = a.process(base);

    GeneralizedPlay b(curves.gamma_l, curves.gamma_r);
    b.init(base.front(), 0.0);
    std::vector<double> out_b;
    for (double u : base) {
      const int copies = rng.uniform_int(1, 3);
      double w = 0.0;
      for (int i = 0; i < copies; ++i) w = b.update(u);
      out_b.push_back(w);
    }
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(out_a[i] == out_b[i]);
  }
}

TEST_CASE("processing a concatenation equals processing the parts") {
  Rng rng(31);
  for (int c = 0; c < 30; ++c) {
    const auto curves = random_curve_pair(rng);
    std::vector<double> head(8), tail(8);
    for (auto& u : head) u = rng.uniform(-4.0, 4.0);
    for (auto& u : tail) u = rng.uniform(-4.0, 4.0);
    std::vector<double> all = head;
    all.insert(all.end(), tail.begin(), tail.end());

    GeneralizedPlay a(curves.gamma_l, curves.gamma_r);
    a.init(0.0, 0.0);
    const auto out_all = a.process(all);

    GeneralizedPlay b(curves.gamma_l, curves.gamma_r);
    b.init(0.0, 0.0);
    auto out_head = b.process(head);
    const auto out_tail = b.process(tail);
    out_head.insert(out_head.end(), out_tail.begin(), out_tail.end());
    CHECK(out_all == out_head);
  }
}

TEST_CASE("order preservation") {
  Rng rng(37);
  for (int c = 0; c < 30; ++c) {
    const auto curves = random_curve_pair(rng);
    GeneralizedPlay hi(curves.gamma_l, curves.gamma_r);
    GeneralizedPlay lo(curves.gamma_l, curves.gamma_r);
    const double w_lo = rng.uniform(-3.0, 3.0);
    hi.init(0.0, w_lo + rng.uniform(0.0, 2.0));
    lo.init(0.0, w_lo);
    CHECK(hi.memory() >= lo.memory() - 1e-15);
    for (int i = 0; i < 100; ++i) {
      const double u_lo = rng.uniform(-5.0, 5.0);
      const double u_hi = u_lo + rng.uniform(0.0, 1.0);
      CHECK(hi.update(u_hi) >= lo.update(u_lo) - 1e-15);
    }
  }
}

TEST_CASE("monotone input closed form for the classical play") {
  Rng rng(41);
  for (int c = 0; c < 20; ++c) {
    const double rho = rng.uniform(0.1, 2.0);
    const double u0 = rng.uniform(-2.0, 2.0);
    const double u_final = u0 + rho + rng.uniform(0.0, 3.0);

    auto play = classical_play(rho);
    play.init(u0, u0);
    double w = play.memory();
    const int steps = rng.uniform_int(2, 50);
    for (int i = 1; i <= steps; ++i) {
      w = play.update(u0 + (u_final - u0) * i / steps);
    }
    CHECK(w == doctest::Approx(u_final - rho).epsilon(1e-12));
  }
}
