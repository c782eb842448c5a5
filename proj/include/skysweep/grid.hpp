#ifndef SKYSWEEP_GRID_HPP_
#define SKYSWEEP_GRID_HPP_

#include <Eigen/Core>
#include <vector>

#include "skysweep/world.hpp"

namespace skysweep {

/// Discretized risk field over the geofence bounding box. Cell edge is twice
/// the turning radius; cells outside the fence or touching an obstacle carry
/// risk exactly 1.
struct OccupancyGrid {
  Vector3d origin{0.0, 0.0, 0.0};  // min corner of cell (0,0,0)
  double resolution = 0.0;         // cell edge [m]
  Eigen::Vector3i dims{0, 0, 0};
  std::vector<double> risk;  // size dims.prod(), x fastest

  int index(int ix, int iy, int iz) const { return (iz * dims.y() + iy) * dims.x() + ix; }
  bool inBounds(int ix, int iy, int iz) const {
    return ix >= 0 && iy >= 0 && iz >= 0 && ix < dims.x() && iy < dims.y() && iz < dims.z();
  }
  Vector3d cellCenter(int ix, int iy, int iz) const {
    return origin + resolution * Vector3d(ix + 0.5, iy + 0.5, iz + 0.5);
  }
  Eigen::Vector3i cellOf(const Vector3d& p) const {
    const Vector3d q = (p - origin) / resolution;
    return {int(std::floor(q.x())), int(std::floor(q.y())), int(std::floor(q.z()))};
  }

  /// Risk of the cell containing p; 1 outside the grid volume.
  double riskAt(const Vector3d& p) const {
    const Eigen::Vector3i c = cellOf(p);
    if (!inBounds(c.x(), c.y(), c.z())) return 1.0;
    return risk[static_cast<std::size_t>(index(c.x(), c.y(), c.z()))];
  }
};

/// Distance-reciprocal occupancy score of a point against every obstacle in
/// the field, averaged over the obstacle count and clamped to [0, 1].
/// A point in contact with any obstacle scores 1; an empty field scores 0.
double globalScore(const Vector3d& point, const ObstacleField& obstacles);

/// Mean of the 3x3x3 neighborhood of global scores around (ix,iy,iz), with
/// off-grid neighbors counted as 1 (past the fence is unsafe).
double localScore(const OccupancyGrid& grid, const std::vector<double>& global_scores, int ix,
                  int iy, int iz);

double collisionRisk(double global_score, double local_score);

/// Builds the risk grid for all obstacles known at time t. Deterministic for
/// fixed inputs; a cell is hard-unsafe when its cube volume intersects an
/// obstacle or its center leaves the fence.
OccupancyGrid buildGrid(const WorldState& world, double t, double turn_radius);

}  // namespace skysweep

#endif  // SKYSWEEP_GRID_HPP_
