#ifndef SKYSWEEP_VEHICLE_HPP_
#define SKYSWEEP_VEHICLE_HPP_

#include <Eigen/Core>

#include "skysweep/roadmap.hpp"
#include "skysweep/trajectory.hpp"

namespace skysweep {

/// Fixed-wing performance envelope.
struct UavConstraints {
  double turn_radius = 22.0;        // m
  double climb_rate_max = 8.0;      // m/s
  double cruise_speed = 30.0;       // m/s
  double max_climb_angle = deg2rad(30.0);
  double max_roll = deg2rad(65.0);
  double max_pitch = deg2rad(25.0);
  double min_pitch = deg2rad(-20.0);
  double l1_period = 15.0;   // s
  double l1_damping = 0.75;
  double l1_xtrack_i = 0.0;  // cross-track integral trim gain, 0 = off
  double l1_distance_override = 0.0;  // m, 0 = derive from period/damping

  /// Climb angle achievable at airspeed v: the geometric limit capped by the
  /// climb-rate bound.
  double effectiveClimbAngle(double v) const {
    const double rate_limit = std::asin(std::clamp(climb_rate_max / v, 0.0, 1.0));
    return std::min(max_climb_angle, rate_limit);
  }

  /// Reference-point distance of the lateral guidance law.
  double l1Distance(double v) const {
    if (l1_distance_override > 0.0) return l1_distance_override;
    return l1_damping * l1_period * v / kPi;
  }

  KinematicLimits kinematicLimits() const {
    return {turn_radius, effectiveClimbAngle(cruise_speed)};
  }

  void validate() const;
};

struct Wind {
  double speed = 0.0;    // m/s
  double bearing = 0.0;  // rad, direction the air moves toward
  Vector2d vector() const { return speed * bearingDir(bearing); }
};

struct UavState {
  Vector3d position{0.0, 0.0, 0.0};
  double heading = 0.0;   // bearing
  double pitch = 0.0;
  double airspeed = 0.0;  // m/s
};

/// Point on the trajectory at distance l1 ahead of the vehicle, measured
/// from the closest-point projection. Falls back to the closest point when
/// the vehicle is farther than l1 from the path, and to the path end when
/// less than l1 of path remains.
Vector3d l1ReferencePoint(const UavState& state, const Trajectory& traj, double l1,
                          std::size_t hint = 0);

/// Signed angle from the velocity vector to the line of sight (positive =
/// reference to the right, commanding a right turn).
double l1Angle(const UavState& state, const Vector3d& ref);

/// Lateral acceleration command 2 v^2 sin(tau) / L1, clamped to the
/// turn-radius limit v^2/R.
double l1AccelCmd(double v, double tau, double l1, double turn_radius);

/// Coordinated-turn point-mass step: heading rate a/v (bounded by v/R),
/// climb rate bounded by both the rate and angle limits, ground velocity =
/// air velocity + wind, forward Euler.
UavState stepVehicle(const UavState& state, double accel_cmd, double climb_cmd,
                     const Wind& wind, double dt, const UavConstraints& limits);

}  // namespace skysweep

#endif  // SKYSWEEP_VEHICLE_HPP_
