#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hysim/kp_model.hpp"
#include "hysim/verification.hpp"
#include "test_models.hpp"

using namespace hysim;

TEST_CASE("make_saturated_play clamps the boundary curves") {
  auto play = make_saturated_play(0.5, 0.0, 1.0, 1.0);
  CHECK(play.gamma_l()(2.0) == 1.0);
  CHECK(play.gamma_r()(2.0) == 1.0);
  CHECK(play.gamma_l()(0.0) == 0.5);
  CHECK(play.gamma_r()(0.0) == 0.0);

  CHECK_THROWS_AS(make_saturated_play(-0.1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_saturated_play(0.5, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_saturated_play(0.5, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("zero half-width play tracks the clamped input") {
  auto play = make_saturated_play(0.0, -1.0, 1.0, 1.0);
  play.init(0.0, 0.0);
  CHECK(play.update(0.3) == doctest::Approx(0.3));
  CHECK(play.update(5.0) == doctest::Approx(1.0));
  CHECK(play.update(-5.0) == doctest::Approx(-1.0));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(KpModel({}, 0.0), std::invalid_argument);
  std::vector<PlayElement> bad;
  bad.push_back({-1.0, make_saturated_play(0.5, 0.0, 1.0)});
  CHECK_THROWS_AS(KpModel(std::move(bad), 0.0), std::invalid_argument);

  auto model = default_triple();
  CHECK_THROWS_AS(model.update(0.0), std::logic_error);
  CHECK_THROWS_AS(model.init(0.0, {0.0}), std::invalid_argument);
}

TEST_CASE("single-element model reduces to the play operator") {
  std::vector<PlayElement> one;
  one.push_back({1.0, make_saturated_play(0.5, 0.0, 1.0)});
  KpModel model(std::move(one), 0.0);

  auto play = make_saturated_play(0.5, 0.0, 1.0);
  play.init(0.2, 0.1);
  CHECK(model.init(0.2, {0.1}) == play.memory());
  for (double u : {0.5, 1.7, -0.3, 0.9}) {
    CHECK(model.update(u) == play.update(u));
  }
}

TEST_CASE("two half-weight copies equal one full-weight element") {
  std::vector<PlayElement> pairp;
  pairp.push_back({0.5, make_saturated_play(0.5, 0.0, 1.0)});
  pairp.push_back({0.5, make_saturated_play(0.5, 0.0, 1.0)});
  KpModel twice(std::move(pairp), 0.0);

  std::vector<PlayElement> one;
  one.push_back({1.0, make_saturated_play(0.5, 0.0, 1.0)});
  KpModel once(std::move(one), 0.0);

  twice.init_virgin(0.0);
  once.init_virgin(0.0);
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(twice.update(u) == doctest::Approx(once.update(u)).epsilon(1e-15));
  }
}

TEST_CASE("default triple initializes to zero from virgin memories at u0=0") {
  auto model = default_triple();
  // element-wise: w_i = min(gamma_l_i(0), max(gamma_r_i(0), 0)) = 0 for all i
  CHECK(model.init_virgin(0.0) == 0.0);
  CHECK(model.output() == 0.0);
}

TEST_CASE("up-down sweep matches the element-wise oracle") {
  // sample a full major loop: 0 -> 4 -> -4 -> 4
  std::vector<double> inputs;
  for (int i = 0; i <= 40; ++i) inputs.push_back(4.0 * i / 40.0);
  for (int i = 1; i <= 80; ++i) inputs.push_back(4.0 - 8.0 * i / 80.0);
  for (int i = 1; i <= 80; ++i) inputs.push_back(-4.0 + 8.0 * i / 80.0);

  PiecewiseLinearInput pwl;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    pwl.points.emplace_back(static_cast<double>(i), inputs[i]);
  }

  auto model = default_triple();
  model.init_virgin(inputs.front());

  std::vector<std::vector<double>> per_element;
  for (const auto& e : model.elements()) {
    per_element.push_back(oracle_play(pwl, e.play.gamma_l(), e.play.gamma_r(), 0.0, 5));
  }

  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const double got = k == 0 ? model.output() : model.update(inputs[k]);
    double want = model.offset();
    for (std::size_t j = 0; j < per_element.size(); ++j) {
      want += model.elements()[j].weight * per_element[j][k];
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("aggregate envelopes") {
  SUBCASE("single element keeps its own curves") {
    std::vector<PlayElement> one;
    one.push_back({1.0, make_saturated_play(0.5, 0.0, 1.0)});
    KpModel model(std::move(one), 0.0);
    const auto [gl, gr] = model.aggregate_envelopes();
    for (double u = -3.0; u <= 3.0; u += 0.01) {
      CHECK(gl(u) == doctest::Approx(model.elements()[0].play.gamma_l()(u)));
      CHECK(gr(u) == doctest::Approx(model.elements()[0].play.gamma_r()(u)));
    }
  }

  SUBCASE("identical elements double the values") {
    std::vector<PlayElement> two;
    two.push_back({1.0, make_saturated_play(0.5, 0.0, 1.0)});
    two.push_back({1.0, make_saturated_play(0.5, 0.0, 1.0)});
    KpModel model(std::move(two), 0.0);
    const auto [gl, gr] = model.aggregate_envelopes();
    const auto& base = model.elements()[0].play.gamma_l();
    for (double u = -3.0; u <= 3.0; u += 0.05) {
      CHECK(gl(u) == doctest::Approx(2.0 * base(u)));
    }
    (void)gr;
  }

  SUBCASE("default triple checked pointwise against direct summation") {
    auto model = default_triple();
    const auto [gl, gr] = model.aggregate_envelopes();
    for (int i = 0; i < 1000; ++i) {
      const double u = -5.0 + 10.0 * i / 999.0;
      double want_l = model.offset();
      double want_r = model.offset();
      for (const auto& e : model.elements()) {
        want_l += e.weight * e.play.gamma_l()(u);
        want_r += e.weight * e.play.gamma_r()(u);
      }
      CHECK(gl(u) == doctest::Approx(want_l).epsilon(1e-14));
      CHECK(gr(u) == doctest::Approx(want_r).epsilon(1e-14));
      CHECK(gr(u) <= gl(u) + 1e-14);
    }
  }
}

TEST_CASE("output range") {
  std::vector<PlayElement> one;
  one.push_back({2.0, make_saturated_play(0.5, 0.0, 1.0)});
  KpModel model(std::move(one), 0.0);
  auto [lo, hi] = model.output_range();
  CHECK(lo == 0.0);
  CHECK(hi == 2.0);

  std::vector<PlayElement> shifted;
  shifted.push_back({2.0, make_saturated_play(0.5, 0.0, 1.0)});
  KpModel with_offset(std::move(shifted), 0.5);
  std::tie(lo, hi) = with_offset.output_range();
  CHECK(lo == 0.5);
  CHECK(hi == 2.5);

  SUBCASE("default triple matches a sweep far beyond saturation") {
    auto triple = default_triple();
    const auto [range_lo, range_hi] = triple.output_range();
    CHECK(range_lo == 0.0);
    CHECK(range_hi == 4.0);

    triple.init_virgin(0.0);
    double seen_lo = triple.output();
    double seen_hi = seen_lo;
    for (int cycle = 0; cycle < 2; ++cycle) {
      for (int i = 0; i <= 400; ++i) {
        const double u = -20.0 + 40.0 * i / 400.0;
        const double w = triple.update(u);
        seen_lo = std::min(seen_lo, w);
        seen_hi = std::max(seen_hi, w);
      }
      for (int i = 0; i <= 400; ++i) {
        const double u = 20.0 - 40.0 * i / 400.0;
        const double w = triple.update(u);
        seen_lo = std::min(seen_lo, w);
        seen_hi = std::max(seen_hi, w);
      }
    }
    CHECK(seen_lo == doctest::Approx(range_lo));
    CHECK(seen_hi == doctest::Approx(range_hi));
  }

  SUBCASE("non-saturating element is rejected") {
    std::vector<PlayElement> open;
    open.push_back({1.0, GeneralizedPlay(PiecewiseLinearCurve::affine(1.0, 1.0),
                                         PiecewiseLinearCurve::affine(1.0, -1.0))});
    KpModel unbounded(std::move(open), 0.0);
    CHECK_THROWS_AS(unbounded.output_range(), std::domain_error);
  }
}

TEST_CASE("band confinement and range hold along random trajectories") {
  Rng rng(47);
  auto model = default_triple();
  const auto [gl, gr] = model.aggregate_envelopes();
  const auto [lo, hi] = model.output_range();
  model.init_virgin(rng.uniform(-2.0, 2.0));
  for (int i = 0; i < 2000; ++i) {
    const double u = rng.uniform(-6.0, 6.0);
    const double w = model.update(u);
    CHECK(w >= gr(u) - 1e-12);
    CHECK(w <= gl(u) + 1e-12);
    CHECK(w >= lo - 1e-12);
    CHECK(w <= hi + 1e-12);
  }
}

TEST_CASE("aggregate order preservation") {
  Rng rng(53);
  auto hi_model = default_triple();
  auto lo_model = default_triple();
  hi_model.init_virgin(0.5);
  lo_model.init_virgin(0.0);
  for (int i = 0; i < 500; ++i) {
    const double u_lo = rng.uniform(-4.0, 4.0);
    const double u_hi = u_lo + rng.uniform(0.0, 1.0);
    CHECK(hi_model.update(u_hi) >= lo_model.update(u_lo) - 1e-14);
  }
}
