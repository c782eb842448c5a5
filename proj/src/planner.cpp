#include "skysweep/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skysweep/clustering.hpp"

namespace skysweep {

void PlannerConfig::validate() const {
  if (!(risk_threshold > 0.0 && risk_threshold < 1.0))
    throw ValidationError("risk_threshold must lie in (0, 1)");
  if (k_knn < 1) throw ValidationError("k_knn must be >= 1");
  if (milestone_count < 0) throw ValidationError("milestone_count must be >= 0");
  if (kmedoids_max_iters < 1) throw ValidationError("kmedoids_max_iters must be >= 1");
  if (samples_per_milestone < 1) throw ValidationError("samples_per_milestone must be >= 1");
  if (!(cruise_alt > 0.0)) throw ValidationError("cruise_alt must be positive");
  if (!(camera_fov > 0.0 && camera_fov < kPi)) throw ValidationError("camera_fov out of (0, pi)");
}

int estimateMilestoneCount(double fence_area, double cruise_alt, double fov) {
  const double t = std::tan(0.5 * fov);
  const double footprint = kPi * cruise_alt * cruise_alt * t * t;
  return std::max(1, int(std::lround(fence_area / footprint)));
}

std::vector<SafeSample> sampleSafeCells(const OccupancyGrid& grid, double delta, int count,
                                        std::uint64_t seed) {
  std::vector<int> eligible;
  for (int i = 0; i < grid.dims.prod(); ++i)
    if (grid.risk[static_cast<std::size_t>(i)] < delta) eligible.push_back(i);
  if (eligible.empty())
    throw PlanningError("no free space under risk threshold delta=" + std::to_string(delta));

  Rng rng(seed);
  std::vector<int> picks = rng.sampleIndices(static_cast<int>(eligible.size()),
                                             std::min<int>(count, int(eligible.size())));
  std::sort(picks.begin(), picks.end());  // stable output order independent of shuffle path

  std::vector<SafeSample> out;
  out.reserve(picks.size());
  const int nx = grid.dims.x(), ny = grid.dims.y();
  for (int p : picks) {
    const int cell = eligible[static_cast<std::size_t>(p)];
    SafeSample s;
    s.position = grid.cellCenter(cell % nx, (cell / nx) % ny, cell / (nx * ny));
    s.risk = grid.risk[static_cast<std::size_t>(cell)];
    out.push_back(s);
  }
  return out;
}

std::vector<int> orderMilestones(const std::vector<Vector3d>& milestones,
                                 const Vector3d& source) {
  const int n = static_cast<int>(milestones.size());
  std::vector<int> order;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Vector3d cur = source;
  for (int step = 0; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double d = (milestones[static_cast<std::size_t>(i)] - cur).norm();
      if (d < best - 1e-12) {
        best = d;
        pick = i;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
    cur = milestones[static_cast<std::size_t>(pick)];
  }
  return order;
}

namespace {

std::vector<PathNode> toPathNodes(const Roadmap& map, const std::vector<int>& path,
                                  double cruise_speed) {
  std::vector<PathNode> out;
  out.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& node = map.nodes[static_cast<std::size_t>(path[i])];
    PathNode pn;
    pn.position = node.position;
    pn.risk = node.risk;
    pn.speed = cruise_speed;
    out.push_back(pn);
  }
  // Headings point along the direction of travel; the last node keeps the
  // previous bearing.
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    out[i].heading = bearingOf((out[i + 1].position - out[i].position).head<2>());
  if (out.size() >= 2) out.back().heading = out[out.size() - 2].heading;
  return out;
}

}  // namespace

std::vector<PathNode> planLeg(GlobalPlan& plan, int from_node, int to_node,
                              const KinematicLimits& limits, double revisit_penalty,
                              double cruise_speed, std::optional<Vector3d> initial_dir,
                              int milestone_index_for_errors) {
  AstarParams params;
  params.revisit_scale = revisit_penalty;
  params.limits = limits;
  AstarResult res = astar(plan.roadmap, from_node, to_node, params, initial_dir);
  if (!res.found)
    throw PlanningError("milestone " + std::to_string(milestone_index_for_errors) +
                            " unreachable from node " + std::to_string(from_node),
                        milestone_index_for_errors);
  std::vector<PathNode> nodes = toPathNodes(plan.roadmap, res.path, cruise_speed);
  if (!nodes.empty()) nodes.erase(nodes.begin());  // caller already holds the start node
  return nodes;
}

GlobalPlan planTour(const WorldState& world, const PlannerConfig& config,
                    const KinematicLimits& limits, const Vector3d& source, double cruise_speed,
                    double t) {
  config.validate();
  GlobalPlan plan;
  plan.grid = buildGrid(world, t, limits.turn_radius);

  SeedSequence seeds(config.rng_seed);
  const std::uint64_t sample_seed = seeds.next();
  const std::uint64_t cluster_seed = seeds.next();

  int k = config.milestone_count;
  if (k == 0)
    k = estimateMilestoneCount(world.fence.area(), config.cruise_alt, config.camera_fov);

  plan.samples = sampleSafeCells(plan.grid, config.risk_threshold,
                                 config.samples_per_milestone * k, sample_seed);
  if (static_cast<int>(plan.samples.size()) < k)
    throw PlanningError("only " + std::to_string(plan.samples.size()) +
                        " safe samples for " + std::to_string(k) + " milestones");

  std::vector<Vector3d> points;
  points.reserve(plan.samples.size());
  for (const auto& s : plan.samples) points.push_back(s.position);
  const KMedoidsResult clusters = kmedoids(points, k, config.kmedoids_max_iters, cluster_seed);

  std::vector<Vector3d> medoid_pos;
  for (int m : clusters.medoids) medoid_pos.push_back(points[static_cast<std::size_t>(m)]);
  const std::vector<int> order = orderMilestones(medoid_pos, source);

  plan.roadmap = buildRoadmap(plan.samples, config.k_knn, plan.grid, config.risk_threshold,
                              limits);
  plan.source_node = plan.roadmap.insertConnected(source, plan.grid.riskAt(source),
                                                  config.k_knn, plan.grid,
                                                  config.risk_threshold, limits);

  plan.milestones.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Milestone m;
    m.position = medoid_pos[static_cast<std::size_t>(order[i])];
    m.roadmap_node = clusters.medoids[static_cast<std::size_t>(order[i])];
    m.tour_index = static_cast<int>(i);
    plan.milestones.push_back(m);
  }

  PathNode start;
  start.position = source;
  start.speed = cruise_speed;
  start.risk = plan.grid.riskAt(source);
  plan.nodes.push_back(start);

  int cur = plan.source_node;
  std::optional<Vector3d> dir;
  for (std::size_t i = 0; i < plan.milestones.size(); ++i) {
    auto& milestone = plan.milestones[i];
    std::vector<PathNode> leg = planLeg(plan, cur, milestone.roadmap_node, limits,
                                        config.revisit_penalty, cruise_speed, dir,
                                        static_cast<int>(i));
    for (auto& n : leg) plan.nodes.push_back(n);
    plan.milestone_marks.push_back(static_cast<int>(plan.nodes.size()) - 1);
    if (plan.nodes.size() >= 2) {
      const Vector3d d = plan.nodes.back().position -
                         plan.nodes[plan.nodes.size() - 2].position;
      if (d.norm() > 1e-9) dir = d;
    }
    cur = milestone.roadmap_node;
  }

  // Fix up headings across segment joints.
  for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i)
    plan.nodes[i].heading =
        bearingOf((plan.nodes[i + 1].position - plan.nodes[i].position).head<2>());
  if (plan.nodes.size() >= 2)
    plan.nodes.back().heading = plan.nodes[plan.nodes.size() - 2].heading;

  plan.length = 0.0;
  for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i)
    plan.length += (plan.nodes[i + 1].position - plan.nodes[i].position).norm();
  return plan;
}

}  // namespace skysweep
