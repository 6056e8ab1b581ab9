#include "tether/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace tether {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void reduce_append(std::vector<int>& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

}  // namespace

WordOracle::WordOracle(const std::vector<Polygon>& obstacles) : obs_(obstacles) {
  // One reference point strictly inside each obstacle, probed inward along
  // the angle bisector at the lowest-leftmost vertex (always strictly convex
  // in a simple CCW polygon).
  for (const auto& poly : obs_) {
    int n = poly.size();
    int k = 0;
    for (int i = 1; i < n; ++i) {
      const Vec2& p = poly.v[i];
      const Vec2& q = poly.v[k];
      if (p.y() < q.y() - kEps || (std::abs(p.y() - q.y()) <= kEps && p.x() < q.x()))
        k = i;
    }
    Vec2 v = poly.at(k);
    Vec2 into = 0.5 * (poly.at(k - 1 + n) + poly.at(k + 1)) - v;
    bool ok = false;
    Vec2 r;
    double step = 0.25;
    for (int it = 0; it < 80 && !ok; ++it, step *= 0.5) {
      r = v + step * into;
      ok = locate_point(r, poly) == PointLoc::Inside;
    }
    if (!ok) throw std::runtime_error("word oracle: no interior reference point found");
    refs_.push_back(r);
  }

  // Common ray direction with no obstacle vertex close to any reference
  // point's ray; golden-angle steps make the scan well spread.
  const double golden = 2.399963229728653;
  double th = 0.6180339887498949;
  bool chosen = false;
  for (int attempt = 0; attempt < 720 && !chosen; ++attempt, th += golden) {
    Vec2 d(std::cos(th), std::sin(th));
    bool ok = true;
    for (const Vec2& r : refs_) {
      for (const auto& poly : obs_) {
        for (const Vec2& p : poly.v) {
          Vec2 q = p - r;
          double along = q.dot(d);
          if (along > -kEps && std::abs(cross2(d, q)) < 1e-7 * std::max(1.0, along)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
    if (ok) {
      ray_dir_ = d;
      chosen = true;
    }
  }
  if (!chosen && !obs_.empty())
    throw std::runtime_error("word oracle: no generic ray direction found");
  if (obs_.empty()) ray_dir_ = Vec2(1, 0);

  for (const auto& poly : obs_)
    for (const Vec2& p : poly.v) point_id(p);
}

int WordOracle::point_id(const Vec2& p) const {
  auto key = std::make_pair(p.x(), p.y());
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(pts_.size());
  pts_.push_back(p);
  ids_.emplace(key, id);
  return id;
}

std::vector<int> WordOracle::segment_word(const Vec2& a, const Vec2& b) const {
  // Signed crossings of segment ab with each obstacle's reference ray,
  // ordered along the segment. Half-open side rule (on-line counts as the
  // non-negative side) keeps words additive under subdivision, so a path
  // vertex sitting exactly on a ray is attributed consistently.
  std::vector<std::pair<double, int>> hits;
  for (size_t i = 0; i < obs_.size(); ++i) {
    const Vec2& r = refs_[i];
    double sa = cross2(ray_dir_, a - r);
    double sb = cross2(ray_dir_, b - r);
    bool neg_a = sa < 0, neg_b = sb < 0;
    if (neg_a == neg_b) continue;
    double t = sa / (sa - sb);
    Vec2 q = a + t * (b - a);
    if ((q - r).dot(ray_dir_) <= 0) continue;  // meets the line behind the ray
    int letter = static_cast<int>(i) + 1;
    hits.push_back({t, neg_a ? letter : -letter});
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return std::abs(x.second) < std::abs(y.second);
  });
  std::vector<int> w;
  w.reserve(hits.size());
  for (const auto& h : hits) w.push_back(h.second);
  return w;
}

std::vector<int> WordOracle::word_of(const Polyline& pl) const {
  std::vector<int> w;
  for (size_t i = 0; i + 1 < pl.size(); ++i)
    for (int letter : segment_word(pl[i], pl[i + 1])) reduce_append(w, letter);
  return w;
}

const WordOracle::PairInfo& WordOracle::pair_info(int i, int j) const {
  auto key = std::make_pair(std::min(i, j), std::max(i, j));
  auto it = pair_cache_.find(key);
  if (it == pair_cache_.end()) {
    PairInfo info;
    const Vec2& p = pts_[key.first];
    const Vec2& q = pts_[key.second];
    info.visible = segment_in_free_space(p, q, obs_);
    if (info.visible) {
      info.len = (q - p).norm();
      info.word = segment_word(p, q);  // oriented low id -> high id
    }
    it = pair_cache_.emplace(key, std::move(info)).first;
  }
  return it->second;
}

Polyline WordOracle::tighten(const Polyline& pl) const {
  Polyline in = dedup_polyline(pl);
  if (in.size() <= 1) return in;

  std::vector<int> target = word_of(in);
  int s = point_id(in.front());
  int t = point_id(in.back());
  // A geodesic's crossing word is reduced as written, so its prefixes never
  // exceed the target word's length; small slack for safety.
  size_t cap = target.size() + 4;

  using State = std::pair<int, std::vector<int>>;
  std::map<State, double> dist;
  std::map<State, State> parent;
  using QE = std::pair<double, State>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;

  State start{s, {}};
  State goal{t, target};
  dist[start] = 0.0;
  pq.push({0.0, start});
  int nverts = static_cast<int>(pts_.size());

  while (!pq.empty()) {
    auto [d, st] = pq.top();
    pq.pop();
    auto dit = dist.find(st);
    if (dit == dist.end() || d > dit->second + 1e-15) continue;
    if (st == goal) break;
    for (int v = 0; v < nverts; ++v) {
      if (v == st.first) continue;
      const PairInfo& info = pair_info(st.first, v);
      if (!info.visible) continue;
      std::vector<int> w = st.second;
      if (st.first < v) {
        for (int letter : info.word) reduce_append(w, letter);
      } else {
        for (int letter : inverse_word(info.word)) reduce_append(w, letter);
      }
      if (w.size() > cap) continue;
      State ns{v, std::move(w)};
      double nd = d + info.len;
      auto found = dist.find(ns);
      if (found != dist.end() && found->second <= nd + 1e-15) continue;
      dist[ns] = nd;
      parent.insert_or_assign(ns, st);
      pq.push({nd, ns});
    }
  }

  if (dist.find(goal) == dist.end())
    throw std::runtime_error("word oracle: target homotopy class unreachable");

  Polyline out;
  State cur = goal;
  while (true) {
    out.push_back(pts_[cur.first]);
    auto pit = parent.find(cur);
    if (pit == parent.end()) break;
    cur = pit->second;
  }
  std::reverse(out.begin(), out.end());
  return drop_collinear(dedup_polyline(out));
}

double grid_shortest_path(const Vec2& p, const Vec2& q, const Scenario& s,
                          double resolution) {
  if (!(resolution > 0)) throw std::runtime_error("grid oracle: bad resolution");
  Vec2 rel = (q - p) / resolution;
  long long tx = std::llround(rel.x());
  long long ty = std::llround(rel.y());
  if (std::abs(rel.x() - double(tx)) > 1e-6 || std::abs(rel.y() - double(ty)) > 1e-6)
    throw std::runtime_error("grid oracle: target is not on the lattice");

  Eigen::AlignedBox2d bb = bounding_box(s.obstacles, {p, q});
  double pad = 2 * resolution + 0.05 * bb.diagonal().norm();
  int ilo = static_cast<int>(std::floor((bb.min().x() - pad - p.x()) / resolution));
  int jlo = static_cast<int>(std::floor((bb.min().y() - pad - p.y()) / resolution));
  int ihi = static_cast<int>(std::ceil((bb.max().x() + pad - p.x()) / resolution));
  int jhi = static_cast<int>(std::ceil((bb.max().y() + pad - p.y()) / resolution));

  std::vector<std::pair<int, int>> moves;
  for (int dx = -3; dx <= 3; ++dx)
    for (int dy = -3; dy <= 3; ++dy) {
      if (dx == 0 && dy == 0) continue;
      if (std::gcd(std::abs(dx), std::abs(dy)) != 1) continue;
      moves.push_back({dx, dy});
    }

  auto at = [&](int i, int j) -> Vec2 { return p + resolution * Vec2(i, j); };
  auto free_node = [&](int i, int j) {
    if (i < ilo || i > ihi || j < jlo || j > jhi) return false;
    Vec2 x = at(i, j);
    for (const auto& poly : s.obstacles)
      if (locate_point(x, poly) == PointLoc::Inside) return false;
    return true;
  };
  if (!free_node(0, 0) || !free_node(int(tx), int(ty)))
    throw std::runtime_error("grid oracle: endpoint not in free space");

  std::map<std::pair<int, int>, double> dist;
  using QE = std::pair<double, std::pair<int, int>>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[{0, 0}] = 0.0;
  pq.push({0.0, {0, 0}});
  std::pair<int, int> goal{int(tx), int(ty)};

  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    auto dit = dist.find(u);
    if (dit == dist.end() || d > dit->second + 1e-15) continue;
    if (u == goal) return d;
    Vec2 up = at(u.first, u.second);
    for (const auto& [dx, dy] : moves) {
      std::pair<int, int> v{u.first + dx, u.second + dy};
      if (!free_node(v.first, v.second)) continue;
      Vec2 vp = at(v.first, v.second);
      if (!segment_in_free_space(up, vp, s.obstacles)) continue;
      double nd = d + (vp - up).norm();
      auto found = dist.find(v);
      if (found != dist.end() && found->second <= nd + 1e-15) continue;
      dist[v] = nd;
      pq.push({nd, v});
    }
  }
  throw std::runtime_error("grid oracle: target unreachable");
}

OracleResult exhaustive_pair_search(const Scenario& s, int max_steps,
                                    double cost_cap) {
  WordOracle wo(s.obstacles);

  std::vector<Vec2> verts;
  std::map<std::pair<double, double>, int> vid;
  auto add_vert = [&](const Vec2& p) {
    auto key = std::make_pair(p.x(), p.y());
    auto it = vid.find(key);
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(verts.size());
    verts.push_back(p);
    vid.emplace(key, id);
    return id;
  };
  add_vert(s.ra);
  add_vert(s.rb);
  int goal_a = add_vert(s.da);
  int goal_b = add_vert(s.db);
  for (const auto& poly : s.obstacles)
    for (const Vec2& p : poly.v) add_vert(p);

  // Full visibility adjacency; no tangency reduction, so the move set is a
  // superset of the planner's and independent of its graph construction.
  int n = static_cast<int>(verts.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (visible(verts[i], verts[j], s.obstacles)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }

  using CoordKey = std::vector<std::pair<double, double>>;
  std::map<CoordKey, std::pair<Polyline, double>> taut_memo;
  auto taut = [&](const Polyline& raw) -> const std::pair<Polyline, double>& {
    CoordKey key;
    key.reserve(raw.size());
    for (const Vec2& v : raw) key.push_back({v.x(), v.y()});
    auto it = taut_memo.find(key);
    if (it == taut_memo.end()) {
      Polyline tightened = wo.tighten(raw);
      double len = polyline_length(tightened);
      it = taut_memo.emplace(std::move(key), std::make_pair(std::move(tightened), len)).first;
    }
    return it->second;
  };

  auto id_key = [&](const Polyline& cable) {
    std::vector<int> k;
    k.reserve(cable.size());
    for (const Vec2& v : cable) k.push_back(vid.at({v.x(), v.y()}));
    return k;
  };

  OracleResult res;
  double best_max = cost_cap, best_sum = kInf;
  // Pareto memo per cable shape: (cost_a, cost_b, steps used); a revisit
  // dominated in all three can't lead anywhere new.
  std::map<std::vector<int>, std::vector<std::array<double, 3>>> seen;

  const auto& [c0, c0len] = taut(s.cable);
  if (c0len > s.ell + kEps) return res;

  std::function<void(const Polyline&, double, double, int)> dfs =
      [&](const Polyline& cable, double ga, double gb, int depth) {
        ++res.states;
        std::vector<int> key = id_key(cable);
        int pa = key.front(), pb = key.back();

        if (pa == goal_a && pb == goal_b) {
          double m = std::max(ga, gb), sum = ga + gb;
          bool better;
          if (!res.feasible)
            better = m <= best_max + 1e-12;
          else
            better = m < best_max - 1e-12 ||
                     (m <= best_max + 1e-12 && sum < best_sum - 1e-12);
          if (better) {
            res.feasible = true;
            res.cost_a = ga;
            res.cost_b = gb;
            best_max = m;
            best_sum = sum;
          }
          return;  // every extension strictly raises the cost sum
        }
        if (depth >= max_steps) return;

        double rest_a = (verts[pa] - verts[goal_a]).norm();
        double rest_b = (verts[pb] - verts[goal_b]).norm();
        double lb_max = std::max(ga + rest_a, gb + rest_b);
        if (lb_max > best_max + 1e-12) return;
        if (res.feasible && lb_max >= best_max - 1e-12 &&
            ga + rest_a + gb + rest_b >= best_sum - 1e-12)
          return;

        auto& entries = seen[key];
        for (const auto& e : entries)
          if (e[0] <= ga + 1e-12 && e[1] <= gb + 1e-12 && e[2] <= depth + 0.5)
            return;
        entries.erase(std::remove_if(entries.begin(), entries.end(),
                                     [&](const std::array<double, 3>& e) {
                                       return ga <= e[0] + 1e-12 && gb <= e[1] + 1e-12 &&
                                              depth <= e[2] + 0.5;
                                     }),
                      entries.end());
        entries.push_back({ga, gb, double(depth)});

        std::vector<std::pair<int, double>> ma{{pa, 0.0}}, mb{{pb, 0.0}};
        for (int v : adj[pa]) ma.push_back({v, (verts[v] - verts[pa]).norm()});
        for (int v : adj[pb]) mb.push_back({v, (verts[v] - verts[pb]).norm()});

        for (const auto& [na, wa] : ma)
          for (const auto& [nb, wb] : mb) {
            if (na == pa && nb == pb) continue;
            double nga = ga + wa, ngb = gb + wb;
            double bound = std::max(nga + (verts[na] - verts[goal_a]).norm(),
                                    ngb + (verts[nb] - verts[goal_b]).norm());
            if (bound > best_max + 1e-12) continue;
            Polyline raw;
            raw.reserve(cable.size() + 2);
            raw.push_back(verts[na]);
            raw.insert(raw.end(), cable.begin(), cable.end());
            raw.push_back(verts[nb]);
            const auto& [tc, tlen] = taut(raw);
            if (tlen > s.ell + kEps) continue;  // cable must fit at every state
            dfs(tc, nga, ngb, depth + 1);
          }
      };

  dfs(c0, 0.0, 0.0, 0);
  return res;
}

SegmentProfile segment_profile(const Solution& sol) {
  SegmentProfile prof;
  auto letter = [](const Vec2& to, const Vec2& end, const Vec2& next) -> char {
    if (on_segment(to, end, next)) return 'F';
    if (orientation(next, end, to) == 0 && (to - end).dot(end - next) > kEps) return 'L';
    return 'O';
  };
  for (size_t i = 0; i + 1 < sol.steps.size(); ++i) {
    const PlanStep& cur = sol.steps[i];
    const PlanStep& nxt = sol.steps[i + 1];
    const Polyline& c = cur.cable.pts;
    if ((nxt.a - cur.a).norm() > kEps)
      prof.a.push_back(c.size() >= 2 ? letter(nxt.a, c.front(), c[1]) : 'O');
    if ((nxt.b - cur.b).norm() > kEps)
      prof.b.push_back(c.size() >= 2 ? letter(nxt.b, c.back(), c[c.size() - 2]) : 'O');
  }
  return prof;
}

}  // namespace tether
