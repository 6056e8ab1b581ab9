#pragma once

#include <string>
#include <vector>

#include "tether/scenario.hpp"
#include "tether/tighten.hpp"

namespace tether {

// Time-parameterized execution of a plan: both robots ride their own path at
// constant speed and arrive together at T = max(len_a, len_b) / mv, so the
// slower path's robot moves at exactly mv and the other strictly under it.
struct Trajectory {
  Polyline tau_a, tau_b;
  std::vector<double> cum_a, cum_b;
  double len_a = 0, len_b = 0;
  double mv = 1.0;
  double T = 0.0;
};

Trajectory make_execution(const Polyline& tau_a, const Polyline& tau_b, double mv);

// Positions at time lam in [0, T].
std::pair<Vec2, Vec2> trajectory_sample(const Trajectory& tr, double lam);

struct ExecutionReport {
  struct Item {
    double lam;
    std::string kind;  // CABLE_OVERLENGTH, OUT_OF_FREE_SPACE, SPEED_LIMIT, ...
    std::string detail;
  };
  std::vector<Item> violations;
  double max_cable = 0.0;  // peak taut cable length over the sampled times
  bool ok() const { return violations.empty(); }
};

// Check the three feasibility conditions along the execution at samples+1
// evenly spaced times: cable within ell, robots out of obstacle interiors,
// speeds within mv. The cable at time lam is the dragged initial cable pulled
// taut, so C-I (connection) holds by construction and is asserted via the
// path endpoints instead.
ExecutionReport verify_execution(const Scenario& s, const Tightener& tg,
                                 const Trajectory& tr, int samples);

}  // namespace tether
