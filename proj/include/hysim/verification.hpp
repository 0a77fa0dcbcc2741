#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hysim/play.hpp"
#include "hysim/simulator.hpp"

namespace hysim {

/// Continuous piecewise-linear input u(t); the exact input class the play
/// recurrence is defined on.
struct PiecewiseLinearInput {
  std::vector<std::pair<double, double>> points;  // (t, u), strictly increasing t

  double eval(double t) const;
  double t_begin() const { return points.front().first; }
  double t_end() const { return points.back().first; }
  void validate() const;
};

/// Reference play output at the input breakpoints, computed on a refined
/// partition (refinement subdivisions per segment). The recurrence is exact
/// per monotone-linear segment, so the result is refinement-independent;
/// streaming implementations are tested against it.
std::vector<double> oracle_play(const PiecewiseLinearInput& input,
                                const PiecewiseLinearCurve& gamma_l,
                                const PiecewiseLinearCurve& gamma_r, double w0,
                                int refinement);

struct VisintinReport {
  double lhs;           // max |eps1 - eps2| over [t1, t2]
  double rhs;           // max(|eps1(t1) - eps2(t1)|, m_M(max |u1 - u2|))
  double gap_at_t1;
  double modulus_term;  // m_M(h)
  double input_gap;     // h = max |u1 - u2| over [t1, t2]
  double M;             // max |u_k| over the whole hull
  bool holds;           // lhs <= rhs + 1e-12
};

/// Evaluates both sides of the output-continuity inequality for two inputs
/// on a shared time hull.
VisintinReport check_visintin_inequality(const PiecewiseLinearInput& input1,
                                         const PiecewiseLinearInput& input2,
                                         const PiecewiseLinearCurve& gamma_l,
                                         const PiecewiseLinearCurve& gamma_r,
                                         double w01, double w02, double t1, double t2,
                                         int refinement = 32);

/// Applies a strictly increasing time warp (breakpoint table fixing the
/// endpoints) to the input and checks that outputs at corresponding
/// breakpoints agree to tol.
bool check_rate_independence(const PiecewiseLinearCurve& gamma_l,
                             const PiecewiseLinearCurve& gamma_r, double w0,
                             const PiecewiseLinearInput& input,
                             const std::vector<std::pair<double, double>>& reparam,
                             int refinement = 8, double tol = 1e-12);

struct PairCheck {
  double u0_a;
  double u0_b;
  bool shared_memory;         // both runs start from one admissible memory
  double gap_start;           // |u0_a - u0_b|
  double gap_end;             // |P(u0_a) - P(u0_b)|
  bool endpoint_ok;           // gap_end <= gap_start + tol
  int pointwise_violations;   // recorded steps with |u_a - u_b| > gap_start + tol
  double worst_excess;        // max over steps of |u_a - u_b| - gap_start
};

struct NonExpansiveReport {
  std::vector<PairCheck> pairs;
  bool all_ok;
};

/// For each u0 pair: endpoint non-expansiveness of the Poincare map plus
/// non-expansiveness at every recorded step, |u_a(t) - u_b(t)| <=
/// |u_a(0) - u_b(0)| + tol. The signal must be periodic.
///
/// The stepwise statement is about two solutions sharing one admissible
/// initial memory; when the element bands at u0_a and u0_b intersect, both
/// runs start from zero clipped into that intersection and the stepwise check
/// counts toward all_ok. When no shared admissible memory exists the runs
/// fall back to the config's memory rule; trajectories can then separate
/// beyond the initial gap while their unequal clipped memories unwind, so
/// only the endpoint inequality counts for such pairs (the recorded
/// violations stay in the report). |u_a(t) - u_b(t)| is moreover not
/// monotone in t in general: after the trajectories touch with unequal
/// frozen memories, the gap rebounds transiently before merging again.
NonExpansiveReport check_poincare_nonexpansive(
    const SimConfig& config, std::span<const std::pair<double, double>> u0_pairs,
    double tol = 1e-10);

// --- seeded randomized campaigns -------------------------------------------

/// Deterministic uniform generator used by the campaigns (and reusable from
/// tests); the double stream does not depend on library distribution details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 gen_;
};

struct CurvePair {
  std::shared_ptr<const PiecewiseLinearCurve> gamma_l;
  std::shared_ptr<const PiecewiseLinearCurve> gamma_r;
};

/// Random non-decreasing curve pair with gamma_r <= gamma_l (shared grid,
/// flats included, constant extensions).
CurvePair random_curve_pair(Rng& rng);

PiecewiseLinearInput random_input(Rng& rng, int min_points = 3, int max_points = 10);

/// Two inputs on one shared time grid.
std::pair<PiecewiseLinearInput, PiecewiseLinearInput> random_input_pair(Rng& rng);

struct CampaignCase {
  int index;
  bool pass;
  double metric;  // max deviation, or lhs - rhs for the inequality campaign
};

struct CampaignReport {
  std::string name;
  std::uint64_t seed = 0;
  int cases = 0;
  int violations = 0;
  double worst_metric = 0.0;
  std::vector<CampaignCase> records;

  bool passed() const { return violations == 0; }
};

/// Streaming play vs oracle_play at all breakpoints, tolerance 1e-12.
CampaignReport run_oracle_equivalence_campaign(int cases, std::uint64_t seed);

/// Output-continuity inequality on random input pairs, tolerance 1e-12.
CampaignReport run_visintin_campaign(int cases, std::uint64_t seed);

/// Random time warps leave outputs unchanged, tolerance 1e-12.
CampaignReport run_rate_independence_campaign(int cases, std::uint64_t seed);

}  // namespace hysim
