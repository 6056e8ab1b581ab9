#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tether/planner.hpp"
#include "tether/scenario.hpp"

namespace tether {

// Exact shortest homotopic path via ray-crossing words, independent of the
// funnel pipeline. Each obstacle gets a reference point in its interior and a
// ray from it in a common generic direction; a path's homotopy class is the
// reduced word of signed ray crossings. Tightening runs a Dijkstra over
// (corner, word) states whose edge words compose to the target word.
class WordOracle {
 public:
  explicit WordOracle(const std::vector<Polygon>& obstacles);

  Polyline tighten(const Polyline& pl) const;

  // Reduced crossing word of a polyline; letters are +-(obstacle index + 1).
  std::vector<int> word_of(const Polyline& pl) const;

 private:
  struct PairInfo {
    bool visible = false;
    double len = 0;
    std::vector<int> word;
  };

  int point_id(const Vec2& p) const;
  std::vector<int> segment_word(const Vec2& a, const Vec2& b) const;
  const PairInfo& pair_info(int i, int j) const;

  std::vector<Polygon> obs_;
  std::vector<Vec2> refs_;
  Vec2 ray_dir_;
  mutable std::vector<Vec2> pts_;
  mutable std::map<std::pair<double, double>, int> ids_;
  mutable std::map<std::pair<int, int>, PairInfo> pair_cache_;
};

// Shortest-path length on a square lattice with gcd-reduced moves of
// Chebyshev radius <= 3 (worst-case metric distortion ~0.26% before cell
// effects; plain 8-connectivity's ~8% would blow the 1% check budget).
// The lattice is anchored at p; q must land on a lattice point.
double grid_shortest_path(const Vec2& p, const Vec2& q, const Scenario& s,
                          double resolution);

// Brute-force optimal pair plan: depth-limited search over joint moves on the
// full visibility vertices (no tangency reduction), tightening with the word
// oracle, cable length enforced at every state. Returns the min-max (then
// min-sum) cost over plans of at most max_steps joint moves. cost_cap prunes
// branches whose max cost already exceeds it (pass an upper bound from a
// known-feasible plan, or infinity).
struct OracleResult {
  bool feasible = false;
  double cost_a = 0;
  double cost_b = 0;
  std::int64_t states = 0;  // search tree nodes visited
};

OracleResult exhaustive_pair_search(const Scenario& s, int max_steps,
                                    double cost_cap);

// Per-robot contact letters of a plan, one letter per joint move (stays emit
// nothing): F while the robot moves on the first cable segment toward the
// interior (cable being reeled in), L while it moves along the outward
// extension of that segment (cable paying out straight), O otherwise.
struct SegmentProfile {
  std::string a, b;
};

SegmentProfile segment_profile(const Solution& sol);

}  // namespace tether
