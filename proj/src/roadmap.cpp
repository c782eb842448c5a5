#include "skysweep/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

namespace skysweep {

bool turnFeasible(const Vector3d& arrival_dir, const Vector3d& edge, double turn_radius) {
  const Vector2d u = arrival_dir.head<2>();
  const Vector2d w = edge.head<2>();
  const double un = u.norm(), wn = w.norm();
  if (un < 1e-12 || wn < 1e-12) return true;  // no horizontal heading involved
  const double c = std::clamp(u.dot(w) / (un * wn), -1.0, 1.0);
  const double theta = std::acos(c);
  return wn >= 2.0 * turn_radius * std::sin(0.5 * theta) - 1e-9;
}

bool climbFeasible(const Vector3d& edge, double max_climb_angle) {
  const double dh = edge.head<2>().norm();
  return std::atan2(std::abs(edge.z()), dh) <= max_climb_angle + 1e-12;
}

bool segmentSafe(const Vector3d& a, const Vector3d& b, const OccupancyGrid& grid, double delta) {
  const double len = (b - a).norm();
  const double step = 0.5 * grid.resolution;
  const int n = std::max(1, int(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    const Vector3d p = a + (b - a) * (double(i) / double(n));
    if (grid.riskAt(p) >= delta) return false;
  }
  return true;
}

Roadmap buildRoadmap(std::span<const SafeSample> samples, int k_knn, const OccupancyGrid& grid,
                     double delta, const KinematicLimits& limits) {
  if (samples.empty()) throw std::invalid_argument("buildRoadmap: no samples");
  const int n = static_cast<int>(samples.size());
  Roadmap map;
  map.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    map.nodes[static_cast<std::size_t>(i)].position = samples[static_cast<std::size_t>(i)].position;
    map.nodes[static_cast<std::size_t>(i)].risk = samples[static_cast<std::size_t>(i)].risk;
  }

  // K nearest by Euclidean distance, brute force with a partial sort.
  std::vector<std::vector<int>> knn(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> dists;
  for (int i = 0; i < n; ++i) {
    dists.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      dists.emplace_back(
          (map.nodes[static_cast<std::size_t>(i)].position -
           map.nodes[static_cast<std::size_t>(j)].position).squaredNorm(),
          j);
    }
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_knn), dists.size());
    std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k), dists.end());
    auto& lst = knn[static_cast<std::size_t>(i)];
    for (std::size_t t = 0; t < k; ++t) lst.push_back(dists[t].second);
    std::sort(lst.begin(), lst.end());
  }

  auto inKnn = [&](int i, int j) {
    const auto& lst = knn[static_cast<std::size_t>(i)];
    return std::binary_search(lst.begin(), lst.end(), j);
  };

  for (int i = 0; i < n; ++i)
    for (int j : knn[static_cast<std::size_t>(i)]) {
      if (j <= i) continue;  // handle each pair once
      if (!inKnn(j, i)) continue;
      const Vector3d edge = map.nodes[static_cast<std::size_t>(j)].position -
                            map.nodes[static_cast<std::size_t>(i)].position;
      if (!climbFeasible(edge, limits.max_climb_angle)) continue;
      if (!segmentSafe(map.nodes[static_cast<std::size_t>(i)].position,
                       map.nodes[static_cast<std::size_t>(j)].position, grid, delta))
        continue;
      map.nodes[static_cast<std::size_t>(i)].neighbors.push_back(j);
      map.nodes[static_cast<std::size_t>(j)].neighbors.push_back(i);
    }
  for (auto& node : map.nodes) std::sort(node.neighbors.begin(), node.neighbors.end());
  return map;
}

int Roadmap::insertConnected(const Vector3d& position, double risk, int k,
                             const OccupancyGrid& grid, double delta,
                             const KinematicLimits& limits) {
  const int id = static_cast<int>(nodes.size());
  RoadmapNode node;
  node.position = position;
  node.risk = risk;
  nodes.push_back(node);

  std::vector<std::pair<double, int>> dists;
  for (int j = 0; j + 1 < static_cast<int>(nodes.size()); ++j)
    dists.emplace_back((nodes[static_cast<std::size_t>(j)].position - position).squaredNorm(), j);
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), dists.size());
  std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(kk), dists.end());
  for (std::size_t t = 0; t < kk; ++t) {
    const int j = dists[t].second;
    const Vector3d edge = nodes[static_cast<std::size_t>(j)].position - position;
    if (!climbFeasible(edge, limits.max_climb_angle)) continue;
    if (!segmentSafe(position, nodes[static_cast<std::size_t>(j)].position, grid, delta)) continue;
    nodes[static_cast<std::size_t>(id)].neighbors.push_back(j);
    nodes[static_cast<std::size_t>(j)].neighbors.push_back(id);
  }
  std::sort(nodes[static_cast<std::size_t>(id)].neighbors.begin(),
            nodes[static_cast<std::size_t>(id)].neighbors.end());
  return id;
}

namespace {

inline std::uint64_t stateKey(int node, int pred) {
  return (std::uint64_t(std::uint32_t(node)) << 32) | std::uint32_t(pred + 1);
}

}  // namespace

template <class Graph>
AstarResult astarSearch(const Graph& graph, int start, int goal, const KinematicLimits& limits,
                        std::span<const double> surcharge,
                        std::optional<Vector3d> initial_dir) {
  AstarResult res;
  if (start == goal) {
    res.found = true;
    res.path = {start};
    return res;
  }
  const Vector3d goal_pos = graph.position(goal);

  // Entries ordered by (f, g, node, pred) so pops are deterministic.
  using Entry = std::tuple<double, double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::uint64_t, double> best_g;
  std::unordered_map<std::uint64_t, int> parent;  // state -> predecessor-of-pred

  const double h0 = (graph.position(start) - goal_pos).norm();
  best_g[stateKey(start, -1)] = 0.0;
  open.emplace(h0, 0.0, start, -1);
  std::set<int> expanded;

  while (!open.empty()) {
    const auto [f, g, node, pred] = open.top();
    open.pop();
    const std::uint64_t key = stateKey(node, pred);
    auto it = best_g.find(key);
    if (it == best_g.end() || g > it->second + 1e-12) continue;  // stale entry
    if (node == goal) {
      res.found = true;
      res.cost = g;
      int cur = node, prev = pred;
      res.path.push_back(cur);
      while (prev != -1) {
        const int pp = parent.at(stateKey(cur, prev));
        res.path.push_back(prev);
        cur = prev;
        prev = pp;
      }
      std::reverse(res.path.begin(), res.path.end());
      res.expanded_nodes.assign(expanded.begin(), expanded.end());
      return res;
    }
    ++res.expansions;
    expanded.insert(node);

    Vector3d arrival = Vector3d::Zero();
    bool have_arrival = false;
    if (pred >= 0) {
      arrival = graph.position(node) - graph.position(pred);
      have_arrival = true;
    } else if (initial_dir) {
      arrival = *initial_dir;
      have_arrival = arrival.norm() > 1e-12;
    }

    graph.forEachNeighbor(node, [&](int next) {
      const Vector3d edge = graph.position(next) - graph.position(node);
      if (!climbFeasible(edge, limits.max_climb_angle)) return;
      if (have_arrival && !turnFeasible(arrival, edge, limits.turn_radius)) return;
      const double tentative = g + edge.norm() + surcharge[static_cast<std::size_t>(next)];
      const std::uint64_t nkey = stateKey(next, node);
      auto found = best_g.find(nkey);
      if (found != best_g.end() && found->second <= tentative + 1e-12) return;
      best_g[nkey] = tentative;
      parent[nkey] = pred;
      open.emplace(tentative + (graph.position(next) - goal_pos).norm(), tentative, next, node);
    });
  }
  res.expanded_nodes.assign(expanded.begin(), expanded.end());
  return res;
}

template AstarResult astarSearch<RoadmapView>(const RoadmapView&, int, int,
                                              const KinematicLimits&, std::span<const double>,
                                              std::optional<Vector3d>);
template AstarResult astarSearch<GridGraph>(const GridGraph&, int, int, const KinematicLimits&,
                                            std::span<const double>, std::optional<Vector3d>);

AstarResult astar(Roadmap& roadmap, int start, int goal, const AstarParams& params,
                  std::optional<Vector3d> initial_dir) {
  const std::size_t n = roadmap.nodes.size();
  std::vector<double> surcharge(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = roadmap.nodes[i];
    // Revisitation penalty only bites once a node has actually been expanded.
    const double penalty =
        node.visit_count >= 1 ? params.revisit_scale * std::exp(double(node.visit_count) - 1.0)
                              : 0.0;
    surcharge[i] = node.risk + penalty;
  }

  AstarResult res = astarSearch(RoadmapView{roadmap}, start, goal, params.limits, surcharge,
                                initial_dir);

  // Penalties stay frozen while searching; counts move afterwards so the
  // next segment of the tour prefers fresh territory.
  for (int i : res.expanded_nodes) ++roadmap.nodes[static_cast<std::size_t>(i)].visit_count;
  return res;
}

}  // namespace skysweep
