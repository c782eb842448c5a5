#ifndef SKYSWEEP_WORLD_HPP_
#define SKYSWEEP_WORLD_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <vector>

#include "skysweep/common.hpp"

namespace skysweep {

/// Polygonal mission boundary plus an altitude band, in the local frame.
struct Geofence {
  std::vector<Vector2d> boundary;  // ordered vertices, simple polygon
  double alt_min = 0.0;
  double alt_max = 0.0;

  bool containsXY(const Vector2d& p) const;
  bool contains(const Vector3d& p) const {
    return p.z() >= alt_min && p.z() <= alt_max && containsXY(p.head<2>());
  }
  Eigen::AlignedBox2d boundingBox() const;
  double area() const;  // shoelace
  Vector2d centroid() const;

  /// Throws ValidationError on degenerate or self-intersecting boundaries.
  void validate() const;
};

/// Solid cylinder standing on the ground plane (z in [0, height]).
struct StaticObstacle {
  Vector2d center{0.0, 0.0};
  double radius = 0.0;
  double height = 0.0;
  double spawn_time = 0.0;  // 0 = known a priori
};

/// Solid sphere moving along a scripted waypoint chain at constant speed.
/// The chain starts at initial_center when the obstacle spawns; the final
/// waypoint is held after the chain is exhausted.
struct DynamicObstacle {
  Vector3d initial_center{0.0, 0.0, 0.0};
  double radius = 0.0;
  double speed = 0.0;
  double spawn_time = 0.0;
  std::vector<Vector3d> waypoints;

  /// Scripted position. Throws if the obstacle has not spawned yet.
  Vector3d positionAt(double t) const;
};

/// Signed clearance from a point to the obstacle surface (< 0 inside).
/// Below the cylinder top the distance is horizontal; above it the distance
/// runs to the cap or rim, matching the yaw/pitch split of the dodge
/// geometry.
double clearance(const Vector3d& p, const StaticObstacle& o);
double sphereClearance(const Vector3d& p, const Vector3d& center, double radius);

struct WorldState {
  Geofence fence;
  std::vector<StaticObstacle> statics;
  std::vector<DynamicObstacle> dynamics;

  std::vector<const StaticObstacle*> staticsAt(double t) const;
  std::vector<const DynamicObstacle*> dynamicsAt(double t) const;
};

/// Snapshot of every obstacle known at one instant: cylinders as-is,
/// dynamic spheres frozen at their scripted position.
struct ObstacleField {
  std::vector<StaticObstacle> cylinders;
  struct Sphere {
    Vector3d center;
    double radius;
  };
  std::vector<Sphere> spheres;

  static ObstacleField at(const WorldState& world, double t);

  int count() const { return static_cast<int>(cylinders.size() + spheres.size()); }
  double minClearance(const Vector3d& p) const;
};

}  // namespace skysweep

#endif  // SKYSWEEP_WORLD_HPP_
