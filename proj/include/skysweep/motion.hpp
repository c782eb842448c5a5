#ifndef SKYSWEEP_MOTION_HPP_
#define SKYSWEEP_MOTION_HPP_

#include "skysweep/dubins.hpp"
#include "skysweep/trajectory.hpp"
#include "skysweep/vehicle.hpp"

namespace skysweep {

/// Raised when the altitude difference between two nodes cannot be closed
/// within the climb envelope over the available horizontal path.
struct ClimbInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bearing of a pose in the horizontal Dubins plane.
inline double mathToBearing(double theta) { return mod2pi(kPi / 2 - theta); }
inline double bearingToMath(double psi) { return kPi / 2 - psi; }

/// Motion primitive between two consecutive path nodes: a shortest Dubins
/// word on (x, y, heading) at the turn radius, with altitude ramped linearly
/// along the horizontal arc length inside the climb envelope. Samples are
/// spaced `sample_step` meters apart along the 3D curve.
Trajectory dubins3d(const PathNode& a, const PathNode& b, const UavConstraints& limits,
                    double sample_step);

/// The horizontal word underlying dubins3d, exposed for inspection.
DubinsPathd horizontalWord(const PathNode& a, const PathNode& b, const UavConstraints& limits);

}  // namespace skysweep

#endif  // SKYSWEEP_MOTION_HPP_
