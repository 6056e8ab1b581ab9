#include "tether/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace tether {

Heuristic heuristic_from_name(const std::string& name) {
  if (name == "none") return Heuristic::None;
  if (name == "sld") return Heuristic::Sld;
  if (name == "spd") return Heuristic::Spd;
  if (name == "jr") return Heuristic::Jr;
  throw std::runtime_error("unknown heuristic: " + name +
                           " (expected none, sld, spd, or jr)");
}

std::string heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::None: return "none";
    case Heuristic::Sld: return "sld";
    case Heuristic::Spd: return "spd";
    case Heuristic::Jr: return "jr";
  }
  return "?";
}

Eigen::AlignedBox2d planning_domain(const Scenario& s) {
  std::vector<Vec2> extra{s.ra, s.rb, s.da, s.db};
  extra.insert(extra.end(), s.cable.begin(), s.cable.end());
  Eigen::AlignedBox2d box = bounding_box(s.obstacles, extra);
  const double pad = 1.0 + 0.05 * box.diagonal().norm();
  box.min() -= Vec2(pad, pad);
  box.max() += Vec2(pad, pad);
  return box;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Key = std::vector<int>;  // taut cable as RVG vertex ids, robot a first

struct Node {
  Key key;
  double ga = 0, gb = 0;
  int parent = -1;
  TautCable cable;
};

// Pareto frontier of cost vectors per cable configuration. A new path is kept
// only if no recorded path reaches the same cable with both costs no worse.
class Frontier {
 public:
  bool admit(const Key& k, double ga, double gb) {
    auto& v = map_[k];
    for (const auto& [x, y] : v)
      if (x <= ga + 1e-12 && y <= gb + 1e-12) return false;
    std::erase_if(v, [&](const std::pair<double, double>& q) {
      return ga <= q.first + 1e-12 && gb <= q.second + 1e-12;
    });
    v.push_back({ga, gb});
    return true;
  }

  bool alive(const Key& k, double ga, double gb) const {
    const auto it = map_.find(k);
    if (it == map_.end()) return false;
    for (const auto& [x, y] : it->second)
      if (x == ga && y == gb) return true;
    return false;
  }

 private:
  std::map<Key, std::vector<std::pair<double, double>>> map_;
};

struct SearchParams {
  TautCable start_cable;
  double seed_ga = 0, seed_gb = 0;
  int goal_a = -1, goal_b = -1;
  double ell = 0;
  bool prune = true;
  Heuristic heur = Heuristic::Spd;
  long long budget = -1;  // expansion budget (jr sub-search); -1 = none
  long long max_expansions = 10'000'000;
  bool sweep = true;  // keep going through the whole optimal-cost band
};

struct SearchResult {
  bool feasible = false;
  bool budget_exhausted = false;
  double best_f = kInf;
  std::vector<Node> chain;  // start..goal states of the selected plan
  long long expanded = 0, generated = 0;
};

class Search {
 public:
  Search(const VisGraph& g, const Tightener& tg, const std::vector<double>& spd_a,
         const std::vector<double>& spd_b, const std::vector<double>& sld_a,
         const std::vector<double>& sld_b)
      : g_(g), tg_(tg), spd_a_(spd_a), spd_b_(spd_b), sld_a_(sld_a), sld_b_(sld_b) {}

  SearchResult run(const SearchParams& P) const;

 private:
  const VisGraph& g_;
  const Tightener& tg_;
  const std::vector<double>&spd_a_, &spd_b_, &sld_a_, &sld_b_;

  Key key_of(const TautCable& c) const {
    Key k;
    k.reserve(c.pts.size());
    for (const Vec2& p : c.pts) {
      const int id = g_.vertex_at(p);
      if (id < 0)
        throw std::logic_error("taut cable bends away from graph vertices at (" +
                               std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
      k.push_back(id);
    }
    return k;
  }

  double jr_value(const SearchParams& P, const Node& n) const;

  double priority(const SearchParams& P, const Node& n) const {
    const int ea = n.key.front(), eb = n.key.back();
    switch (P.heur) {
      case Heuristic::None:
        return std::max(n.ga, n.gb);
      case Heuristic::Sld:
        return std::max(n.ga + sld_a_[ea], n.gb + sld_b_[eb]);
      case Heuristic::Spd:
        return std::max(n.ga + spd_a_[ea], n.gb + spd_b_[eb]);
      case Heuristic::Jr: {
        const double base = std::max(n.ga + spd_a_[ea], n.gb + spd_b_[eb]);
        return std::max(base, jr_value(P, n));
      }
    }
    return 0;
  }
};

// Relaxed sub-instance from the current state: same goals, cable budget
// inflated by 1 + (wrap count). Its optimal bottleneck cost, seeded with the
// costs already paid, lower-bounds the full completion cost; on a blown
// budget fall back to the plain spd bound, on sub-infeasibility prune hard.
double Search::jr_value(const SearchParams& P, const Node& n) const {
  const int wraps = std::max<int>(0, static_cast<int>(n.cable.pts.size()) - 2);
  SearchParams sub;
  sub.start_cable = n.cable;
  sub.seed_ga = n.ga;
  sub.seed_gb = n.gb;
  sub.goal_a = P.goal_a;
  sub.goal_b = P.goal_b;
  sub.ell = P.ell * (1.0 + wraps);
  sub.prune = true;
  sub.heur = Heuristic::Spd;
  sub.budget = 10 * static_cast<long long>(g_.size());
  sub.max_expansions = P.max_expansions;
  sub.sweep = false;
  const SearchResult r = run(sub);
  if (r.budget_exhausted)
    return std::max(n.ga + spd_a_[n.key.front()], n.gb + spd_b_[n.key.back()]);
  return r.feasible ? r.best_f : kInf;
}

SearchResult Search::run(const SearchParams& P) const {
  SearchResult R;
  std::vector<Node> arena;
  Frontier frontier;

  struct QE {
    double f, gsum;
    int idx;
  };
  auto cmp = [&arena](const QE& a, const QE& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.gsum != b.gsum) return a.gsum > b.gsum;
    const Node &na = arena[a.idx], &nb = arena[b.idx];
    if (na.key != nb.key) return na.key > nb.key;
    return na.ga > nb.ga;
  };
  std::priority_queue<QE, std::vector<QE>, decltype(cmp)> open(cmp);

  {
    Node root;
    root.key = key_of(P.start_cable);
    root.ga = P.seed_ga;
    root.gb = P.seed_gb;
    root.cable = P.start_cable;
    if (P.prune && root.cable.length > P.ell + kEps) return R;  // infeasible now
    frontier.admit(root.key, root.ga, root.gb);
    const double f = priority(P, root);
    arena.push_back(std::move(root));
    if (f < kInf) open.push({f, arena[0].ga + arena[0].gb, 0});
  }

  bool found = false;
  double cstar = kInf;
  std::vector<int> goals;

  while (!open.empty()) {
    const QE e = open.top();
    open.pop();
    if (found && e.f > cstar + 1e-12) break;  // the optimal band is exhausted
    const Node n = arena[e.idx];
    if (!frontier.alive(n.key, n.ga, n.gb)) continue;  // superseded en route

    const bool at_goal = n.key.front() == P.goal_a && n.key.back() == P.goal_b &&
                         n.cable.length <= P.ell + kEps;
    if (at_goal) {
      const double val = std::max(n.ga, n.gb);
      if (!found || val < cstar) {
        found = true;
        cstar = val;
      }
      goals.push_back(e.idx);
      if (!P.sweep) break;
      continue;
    }

    ++R.expanded;
    if (P.budget >= 0 && R.expanded > P.budget) {
      R.budget_exhausted = true;
      return R;
    }
    if (R.expanded > P.max_expansions)
      throw std::runtime_error("planner: expansion cap exceeded");

    const int ea = n.key.front(), eb = n.key.back();
    std::vector<std::pair<int, double>> ma{{ea, 0.0}}, mb{{eb, 0.0}};
    for (const VisGraph::Edge& ed : g_.adj[ea]) ma.push_back({ed.to, ed.w});
    for (const VisGraph::Edge& ed : g_.adj[eb]) mb.push_back({ed.to, ed.w});

    for (const auto& [na, wa] : ma)
      for (const auto& [nb, wb] : mb) {
        if (na == ea && nb == eb) continue;  // both staying is a no-op
        TautCable c1 =
            cable_after_move(tg_, n.cable, g_.verts[na], g_.verts[nb]);
        if (P.prune && c1.length > P.ell + kEps) continue;
        Node child;
        child.key = key_of(c1);
        child.ga = n.ga + wa;
        child.gb = n.gb + wb;
        child.parent = e.idx;
        child.cable = std::move(c1);
        if (!frontier.admit(child.key, child.ga, child.gb)) continue;
        const double f = priority(P, child);
        const double gsum = child.ga + child.gb;
        arena.push_back(std::move(child));
        if (f < kInf) {
          open.push({f, gsum, static_cast<int>(arena.size()) - 1});
          ++R.generated;
        }
      }
  }

  if (!found) return R;
  R.feasible = true;
  R.best_f = cstar;

  // All optimal-bottleneck goals were collected; pick the canonical one.
  int best = -1;
  for (int idx : goals) {
    const Node& n = arena[idx];
    if (std::max(n.ga, n.gb) > cstar + 1e-12) continue;
    if (best == -1) {
      best = idx;
      continue;
    }
    const Node& m = arena[best];
    const double sn = n.ga + n.gb, sm = m.ga + m.gb;
    if (sn != sm ? sn < sm : n.key < m.key) best = idx;
  }

  for (int idx = best; idx != -1; idx = arena[idx].parent) R.chain.push_back(arena[idx]);
  std::reverse(R.chain.begin(), R.chain.end());
  return R;
}

}  // namespace

Solution plan(const Scenario& s, const PlanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  const VisGraph g = build_rvg(s);
  const Tightener tg(s.obstacles, planning_domain(s));

  std::vector<double> spd_a, spd_b, sld_a(g.size()), sld_b(g.size());
  if (cfg.heuristic == Heuristic::Spd || cfg.heuristic == Heuristic::Jr) {
    spd_a = dijkstra(g, g.da);
    spd_b = dijkstra(g, g.db);
  } else {
    spd_a.assign(g.size(), 0.0);
    spd_b.assign(g.size(), 0.0);
  }
  for (int v = 0; v < g.size(); ++v) {
    sld_a[v] = (g.verts[v] - s.da).norm();
    sld_b[v] = (g.verts[v] - s.db).norm();
  }

  SearchParams P;
  P.start_cable = make_taut(tg, s.cable);
  P.goal_a = g.da;
  P.goal_b = g.db;
  P.ell = s.ell;
  P.prune = cfg.prune;
  P.heur = cfg.heuristic;
  P.max_expansions = cfg.max_expansions;

  const Search search(g, tg, spd_a, spd_b, sld_a, sld_b);
  const SearchResult r = search.run(P);

  Solution sol;
  sol.stats.expanded = r.expanded;
  sol.stats.generated = r.generated;
  sol.feasible = r.feasible;
  if (r.feasible) {
    Polyline pa, pb;
    for (const Node& n : r.chain) {
      sol.steps.push_back(
          {g.verts[n.key.front()], g.verts[n.key.back()], n.cable});
      pa.push_back(g.verts[n.key.front()]);
      pb.push_back(g.verts[n.key.back()]);
    }
    sol.tau_a = dedup_polyline(pa);
    sol.tau_b = dedup_polyline(pb);
    sol.cost_a = r.chain.back().ga;
    sol.cost_b = r.chain.back().gb;
  }
  sol.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace tether
