#ifndef SKYSWEEP_TRAJECTORY_HPP_
#define SKYSWEEP_TRAJECTORY_HPP_

#include <Eigen/Core>
#include <vector>

#include "skysweep/common.hpp"

namespace skysweep {

/// One waypoint of a planned path: position, desired bearing, target
/// airspeed and the risk of the grid cell it came from.
struct PathNode {
  Vector3d position{0.0, 0.0, 0.0};
  double heading = 0.0;  // bearing, rad clockwise from north
  double speed = 0.0;    // m/s
  double risk = 0.0;     // [0, 1]
};

/// One sample of a smoothed motion primitive.
struct TrajectorySample {
  double s = 0.0;  // arc length from the start [m]
  Vector3d position{0.0, 0.0, 0.0};
  double heading = 0.0;  // bearing
  double pitch = 0.0;    // rad, positive climbing
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  bool empty() const { return samples.empty(); }

  /// Appends another trajectory, rebasing its arc length; drops the
  /// duplicated joint sample.
  void append(const Trajectory& tail);

  /// Interpolated position at arc length s (clamped to the ends).
  Vector3d positionAt(double s) const;

  /// Arc length of the point closest to p, searched from sample index
  /// `hint` onward (pass 0 to scan everything).
  double closestArcLength(const Vector3d& p, std::size_t hint = 0) const;
};

}  // namespace skysweep

#endif  // SKYSWEEP_TRAJECTORY_HPP_
