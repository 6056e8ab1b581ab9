#pragma once

#include <string>
#include <vector>

#include "tether/cable.hpp"
#include "tether/scenario.hpp"
#include "tether/tighten.hpp"
#include "tether/visgraph.hpp"

namespace tether {

enum class Heuristic { None, Sld, Spd, Jr };

Heuristic heuristic_from_name(const std::string& name);
std::string heuristic_name(Heuristic h);

struct PlanConfig {
  Heuristic heuristic = Heuristic::Spd;
  bool prune = true;  // drop intermediate cables longer than ell as they arise
  long long max_expansions = 10'000'000;  // hard stop for runaway searches
};

struct SearchStats {
  long long expanded = 0;   // nodes popped and processed (stale pops excluded)
  long long generated = 0;  // nodes that survived dominance and entered the queue
  double wall_time_s = 0.0;
};

// One waypoint of the plan: both robot positions and the taut cable.
struct PlanStep {
  Vec2 a, b;
  TautCable cable;
};

struct Solution {
  bool feasible = false;
  Polyline tau_a, tau_b;  // per-robot paths including the start, stays collapsed
  double cost_a = 0.0, cost_b = 0.0;
  std::vector<PlanStep> steps;  // state sequence from start to goal
  SearchStats stats;

  double max_cost() const { return cost_a > cost_b ? cost_a : cost_b; }
  const TautCable& final_cable() const { return steps.back().cable; }
};

// Minimize the larger of the two path lengths subject to the cable staying
// connected, taut-feasible, and within ell at all times. Among plans with the
// optimal bottleneck cost the one with the smaller cost sum (then the
// lexicographically smallest cable) is returned, independent of heuristic.
Solution plan(const Scenario& s, const PlanConfig& cfg = {});

// Box padded so taut paths between scenario points never feel the outer wall.
Eigen::AlignedBox2d planning_domain(const Scenario& s);

}  // namespace tether
