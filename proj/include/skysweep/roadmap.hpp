#ifndef SKYSWEEP_ROADMAP_HPP_
#define SKYSWEEP_ROADMAP_HPP_

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "skysweep/grid.hpp"

namespace skysweep {

/// Grid cell whose collision risk cleared the sampling threshold.
struct SafeSample {
  Vector3d position{0.0, 0.0, 0.0};
  double risk = 0.0;
};

struct KinematicLimits {
  double turn_radius = 22.0;
  double max_climb_angle = deg2rad(30.0);  // effective limit, rad
};

/// Discrete turn feasibility: the new edge must be long enough (in the
/// horizontal plane) to absorb the heading change at the minimum turn radius.
bool turnFeasible(const Vector3d& arrival_dir, const Vector3d& edge, double turn_radius);
bool climbFeasible(const Vector3d& edge, double max_climb_angle);

/// Straight connection check: risk below `delta` at points sampled every
/// half grid-resolution along the segment.
bool segmentSafe(const Vector3d& a, const Vector3d& b, const OccupancyGrid& grid, double delta);

struct RoadmapNode {
  Vector3d position{0.0, 0.0, 0.0};
  double risk = 0.0;
  std::vector<int> neighbors;  // sorted, symmetric
  int visit_count = 0;
};

struct Roadmap {
  std::vector<RoadmapNode> nodes;

  /// Adds a node and wires it to its k nearest feasible neighbors (both
  /// adjacency lists). Used to splice the tour source into the map.
  int insertConnected(const Vector3d& position, double risk, int k, const OccupancyGrid& grid,
                      double delta, const KinematicLimits& limits);
};

/// Mutual-KNN roadmap over the safe samples: an edge exists when each node is
/// among the other's k nearest and the straight connection is both collision
/// free and within the climb limit. Every node keeps at most k neighbors.
Roadmap buildRoadmap(std::span<const SafeSample> samples, int k_knn, const OccupancyGrid& grid,
                     double delta, const KinematicLimits& limits);

struct AstarResult {
  bool found = false;
  std::vector<int> path;  // node indices, start..goal
  double cost = 0.0;
  int expansions = 0;              // state pops
  std::vector<int> expanded_nodes;  // distinct nodes expanded, ascending
};

/// A* over (node, predecessor) states so the heading-change filter sees the
/// arrival direction. `surcharge[v]` is added to g whenever v is entered;
/// the guidance term is the straight-line distance to the goal.
template <class Graph>
AstarResult astarSearch(const Graph& graph, int start, int goal, const KinematicLimits& limits,
                        std::span<const double> surcharge,
                        std::optional<Vector3d> initial_dir = std::nullopt);

struct AstarParams {
  double revisit_scale = 1000.0;  // penalty multiplier on revisited nodes
  KinematicLimits limits;
};

/// Roadmap search with the risk + revisitation surcharge. Visit counts of
/// expanded nodes are bumped after the search so successive calls within one
/// tour steer toward unexplored regions; counts are frozen while searching.
AstarResult astar(Roadmap& roadmap, int start, int goal, const AstarParams& params,
                  std::optional<Vector3d> initial_dir = std::nullopt);

/// Adapters for astarSearch.
struct RoadmapView {
  const Roadmap& map;
  int size() const { return static_cast<int>(map.nodes.size()); }
  const Vector3d& position(int i) const { return map.nodes[static_cast<std::size_t>(i)].position; }
  template <class F>
  void forEachNeighbor(int i, F&& f) const {
    for (int j : map.nodes[static_cast<std::size_t>(i)].neighbors) f(j);
  }
};

/// Full-grid search space: 26-connected cells below the risk threshold.
struct GridGraph {
  const OccupancyGrid& grid;
  double delta;

  int size() const { return grid.dims.prod(); }
  Vector3d position(int i) const {
    const int nx = grid.dims.x(), ny = grid.dims.y();
    return grid.cellCenter(i % nx, (i / nx) % ny, i / (nx * ny));
  }
  bool passable(int i) const { return grid.risk[static_cast<std::size_t>(i)] < delta; }
  template <class F>
  void forEachNeighbor(int i, F&& f) const {
    const int nx = grid.dims.x(), ny = grid.dims.y();
    const int ix = i % nx, iy = (i / nx) % ny, iz = i / (nx * ny);
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const int x = ix + dx, y = iy + dy, z = iz + dz;
          if (!grid.inBounds(x, y, z)) continue;
          const int j = grid.index(x, y, z);
          if (passable(j)) f(j);
        }
  }
};

}  // namespace skysweep

#endif  // SKYSWEEP_ROADMAP_HPP_
