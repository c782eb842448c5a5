#include "skysweep/grid.hpp"

#include <algorithm>
#include <cmath>

namespace skysweep {

namespace {

double pointToBoxDistXY(const Vector2d& p, const Vector2d& lo, const Vector2d& hi) {
  const double dx = std::max({lo.x() - p.x(), 0.0, p.x() - hi.x()});
  const double dy = std::max({lo.y() - p.y(), 0.0, p.y() - hi.y()});
  return std::hypot(dx, dy);
}

double pointToBoxDist(const Vector3d& p, const Vector3d& lo, const Vector3d& hi) {
  const double dx = std::max({lo.x() - p.x(), 0.0, p.x() - hi.x()});
  const double dy = std::max({lo.y() - p.y(), 0.0, p.y() - hi.y()});
  const double dz = std::max({lo.z() - p.z(), 0.0, p.z() - hi.z()});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// True when the axis-aligned cube [lo, hi] intersects the obstacle solid.
bool cubeOverlaps(const Vector3d& lo, const Vector3d& hi, const StaticObstacle& o) {
  if (lo.z() > o.height) return false;  // cylinder stands on the ground plane
  if (hi.z() < 0.0) return false;
  return pointToBoxDistXY(o.center, lo.head<2>(), hi.head<2>()) <= o.radius;
}

bool cubeOverlaps(const Vector3d& lo, const Vector3d& hi, const ObstacleField::Sphere& s) {
  return pointToBoxDist(s.center, lo, hi) <= s.radius;
}

}  // namespace

double globalScore(const Vector3d& point, const ObstacleField& obstacles) {
  const int k = obstacles.count();
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (const auto& c : obstacles.cylinders) {
    const double gap = clearance(point, c);
    if (gap <= 0.0) return 1.0;
    sum += 1.0 / gap;
  }
  for (const auto& s : obstacles.spheres) {
    const double gap = sphereClearance(point, s.center, s.radius);
    if (gap <= 0.0) return 1.0;
    sum += 1.0 / gap;
  }
  return std::clamp(sum / double(k), 0.0, 1.0);
}

double localScore(const OccupancyGrid& grid, const std::vector<double>& global_scores, int ix,
                  int iy, int iz) {
  double sum = 0.0;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = ix + dx, y = iy + dy, z = iz + dz;
        sum += grid.inBounds(x, y, z)
                   ? global_scores[static_cast<std::size_t>(grid.index(x, y, z))]
                   : 1.0;
      }
  return sum / 27.0;
}

double collisionRisk(double global_score, double local_score) {
  return std::max(global_score, local_score);
}

OccupancyGrid buildGrid(const WorldState& world, double t, double turn_radius) {
  world.fence.validate();
  if (!(turn_radius > 0.0)) throw ValidationError("turn radius must be positive");

  OccupancyGrid grid;
  grid.resolution = 2.0 * turn_radius;
  const Eigen::AlignedBox2d box = world.fence.boundingBox();
  grid.origin = {box.min().x(), box.min().y(), world.fence.alt_min};
  const Vector3d extent{box.sizes().x(), box.sizes().y(),
                        world.fence.alt_max - world.fence.alt_min};
  for (int axis = 0; axis < 3; ++axis)
    grid.dims[axis] = std::max(1, int(std::ceil(extent[axis] / grid.resolution - 1e-12)));

  const ObstacleField obstacles = ObstacleField::at(world, t);
  const std::size_t n = static_cast<std::size_t>(grid.dims.prod());
  std::vector<double> global_scores(n, 1.0);

  const Vector3d half = 0.5 * grid.resolution * Vector3d::Ones();
  for (int iz = 0; iz < grid.dims.z(); ++iz)
    for (int iy = 0; iy < grid.dims.y(); ++iy)
      for (int ix = 0; ix < grid.dims.x(); ++ix) {
        const Vector3d c = grid.cellCenter(ix, iy, iz);
        const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy, iz));
        if (!world.fence.contains(c)) {
          global_scores[idx] = 1.0;
          continue;
        }
        bool overlapped = false;
        for (const auto& o : obstacles.cylinders)
          if (cubeOverlaps(c - half, c + half, o)) {
            overlapped = true;
            break;
          }
        if (!overlapped)
          for (const auto& s : obstacles.spheres)
            if (cubeOverlaps(c - half, c + half, s)) {
              overlapped = true;
              break;
            }
        global_scores[idx] = overlapped ? 1.0 : globalScore(c, obstacles);
      }

  grid.risk.resize(n);
  for (int iz = 0; iz < grid.dims.z(); ++iz)
    for (int iy = 0; iy < grid.dims.y(); ++iy)
      for (int ix = 0; ix < grid.dims.x(); ++ix) {
        const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy, iz));
        grid.risk[idx] =
            collisionRisk(global_scores[idx], localScore(grid, global_scores, ix, iy, iz));
      }
  return grid;
}

}  // namespace skysweep
