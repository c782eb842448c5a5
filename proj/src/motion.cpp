#include "skysweep/motion.hpp"

#include <algorithm>
#include <cmath>

namespace skysweep {

DubinsPathd horizontalWord(const PathNode& a, const PathNode& b, const UavConstraints& limits) {
  Pose2d start{a.position.head<2>(), bearingToMath(a.heading)};
  Pose2d end{b.position.head<2>(), bearingToMath(b.heading)};
  return shortestDubins(start, end, limits.turn_radius);
}

Trajectory dubins3d(const PathNode& a, const PathNode& b, const UavConstraints& limits,
                    double sample_step) {
  Trajectory traj;
  const double dz = b.position.z() - a.position.z();

  const DubinsPathd word = horizontalWord(a, b, limits);
  const double horiz_len = word.length();

  if (horiz_len < 1e-9) {
    if (std::abs(dz) > 1e-9)
      throw ClimbInfeasible("pure vertical transition requested between coincident poses");
    TrajectorySample s;
    s.s = 0.0;
    s.position = a.position;
    s.heading = a.heading;
    s.pitch = 0.0;
    traj.samples.push_back(s);
    return traj;
  }

  const double climb_limit = dz >= 0.0
                                 ? limits.effectiveClimbAngle(std::max(a.speed, 1e-6))
                                 : std::min(std::abs(limits.min_pitch),
                                            limits.effectiveClimbAngle(std::max(a.speed, 1e-6)));
  const double gamma = std::atan2(dz, horiz_len);
  if (std::abs(gamma) > climb_limit + 1e-9)
    throw ClimbInfeasible("climb angle " + std::to_string(rad2deg(gamma)) +
                          " deg exceeds the limit of " + std::to_string(rad2deg(climb_limit)) +
                          " deg over this segment");

  const double slope = dz / horiz_len;
  const double scale = std::sqrt(1.0 + slope * slope);  // d(arc3d)/d(arc2d)
  const int n = std::max(1, int(std::ceil(horiz_len * scale / sample_step)));
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double sh = horiz_len * double(i) / double(n);
    const Pose2d pose = word.at(sh);
    TrajectorySample s;
    s.s = sh * scale;
    s.position = Vector3d(pose.position.x(), pose.position.y(), a.position.z() + slope * sh);
    s.heading = mathToBearing(pose.heading);
    s.pitch = gamma;
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace skysweep
