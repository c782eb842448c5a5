#ifndef SKYSWEEP_PLANNER_HPP_
#define SKYSWEEP_PLANNER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "skysweep/roadmap.hpp"
#include "skysweep/trajectory.hpp"
#include "skysweep/world.hpp"

namespace skysweep {

struct PlannerConfig {
  double risk_threshold = 0.5;  // delta, cells below it are safe
  int milestone_count = 0;      // 0 = derive from fence area / camera footprint
  int k_knn = 12;
  int kmedoids_max_iters = 60;
  double revisit_penalty = 1000.0;
  int samples_per_milestone = 40;
  double cruise_alt = 180.0;      // m, feeds the milestone estimate
  double camera_fov = deg2rad(60.0);  // rad
  std::uint64_t rng_seed = 1;

  void validate() const;
};

/// Number of milestones needed so the camera footprint discs tile the fence:
/// round(area / (pi * h^2 * tan^2(fov/2))), at least 1.
int estimateMilestoneCount(double fence_area, double cruise_alt, double fov);

/// Seeded uniform draw of up to `count` cells with risk < delta.
/// Throws PlanningError when no cell clears the threshold.
std::vector<SafeSample> sampleSafeCells(const OccupancyGrid& grid, double delta, int count,
                                        std::uint64_t seed);

/// Greedy nearest-unvisited chain from the source; ties to the lowest index.
std::vector<int> orderMilestones(const std::vector<Vector3d>& milestones,
                                 const Vector3d& source);

enum class MilestoneStatus { Unvisited, Visited, Unsafe };

struct Milestone {
  Vector3d position{0.0, 0.0, 0.0};
  int roadmap_node = -1;
  int tour_index = -1;
  MilestoneStatus status = MilestoneStatus::Unvisited;
};

struct GlobalPlan {
  std::vector<PathNode> nodes;      // the whole tour, source first
  std::vector<int> milestone_marks; // node index where each tour milestone sits
  std::vector<Milestone> milestones;  // in tour order
  OccupancyGrid grid;
  std::vector<SafeSample> samples;
  Roadmap roadmap;
  int source_node = -1;
  double length = 0.0;

  double tourLength() const { return length; }
};

/// Algorithm: build the risk grid, sample safe cells, cluster them into
/// milestones, order the tour greedily and chain A* segments between
/// consecutive milestones. Headings point along the direction of travel.
/// Throws PlanningError naming the milestone when a segment is unreachable.
GlobalPlan planTour(const WorldState& world, const PlannerConfig& config,
                    const KinematicLimits& limits, const Vector3d& source, double cruise_speed,
                    double t = 0.0);

/// A* leg between two roadmap nodes of an existing plan, reusing its visit
/// counts. Returns the PathNode chain (excluding the start node itself).
std::vector<PathNode> planLeg(GlobalPlan& plan, int from_node, int to_node,
                              const KinematicLimits& limits, double revisit_penalty,
                              double cruise_speed, std::optional<Vector3d> initial_dir,
                              int milestone_index_for_errors = -1);

}  // namespace skysweep

#endif  // SKYSWEEP_PLANNER_HPP_
