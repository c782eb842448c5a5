#include "skysweep/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace skysweep {

void UavConstraints::validate() const {
  if (!(turn_radius > 0.0)) throw ValidationError("turn_radius must be positive");
  if (!(climb_rate_max > 0.0)) throw ValidationError("climb_rate_max must be positive");
  if (!(cruise_speed > 0.0)) throw ValidationError("cruise_speed must be positive");
  if (!(max_climb_angle > 0.0 && max_climb_angle < kPi / 2))
    throw ValidationError("max_climb_angle out of (0, pi/2)");
  if (!(max_pitch > 0.0)) throw ValidationError("max_pitch must be positive");
  if (!(min_pitch < 0.0)) throw ValidationError("min_pitch must be negative");
  if (!(l1_period > 0.0)) throw ValidationError("l1_period must be positive");
  if (!(l1_damping > 0.0)) throw ValidationError("l1_damping must be positive");
}

Vector3d l1ReferencePoint(const UavState& state, const Trajectory& traj, double l1,
                          std::size_t hint) {
  if (traj.samples.empty()) return state.position;
  const double s0 = traj.closestArcLength(state.position, hint);
  const Vector3d closest = traj.positionAt(s0);
  if ((closest - state.position).norm() > l1) return closest;

  // March ahead from the projection and return the first crossing of the
  // l1 sphere around the vehicle; segments are short relative to l1 so a
  // per-sample test is adequate.
  const double end = traj.length();
  const double step = std::max(l1 * 0.02, 0.25);
  double prev_s = s0;
  Vector3d prev_p = closest;
  for (double s = s0 + step; s < end + step; s += step) {
    const double sc = std::min(s, end);
    const Vector3d p = traj.positionAt(sc);
    if ((p - state.position).norm() >= l1) {
      // Bisect between prev and p for the crossing.
      double lo = prev_s, hi = sc;
      for (int i = 0; i < 24; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((traj.positionAt(mid) - state.position).norm() >= l1)
          hi = mid;
        else
          lo = mid;
      }
      return traj.positionAt(hi);
    }
    if (sc >= end) break;
    prev_s = sc;
    prev_p = p;
  }
  (void)prev_p;
  return traj.samples.back().position;  // less than l1 of path left
}

double l1Angle(const UavState& state, const Vector3d& ref) {
  const Vector2d vel = bearingDir(state.heading);
  const Vector2d los = (ref - state.position).head<2>();
  if (los.norm() < 1e-12) return 0.0;
  // Positive when the reference lies to the right of the velocity vector.
  const double cross = vel.x() * los.y() - vel.y() * los.x();
  const double dot = vel.dot(los);
  return -std::atan2(cross, dot);
}

double l1AccelCmd(double v, double tau, double l1, double turn_radius) {
  const double a = 2.0 * v * v * std::sin(tau) / l1;
  const double a_max = v * v / turn_radius;
  return std::clamp(a, -a_max, a_max);
}

UavState stepVehicle(const UavState& state, double accel_cmd, double climb_cmd,
                     const Wind& wind, double dt, const UavConstraints& limits) {
  UavState next = state;
  const double v = state.airspeed;

  const double yaw_rate = std::clamp(accel_cmd / v, -v / limits.turn_radius,
                                     v / limits.turn_radius);
  next.heading = mod2pi(state.heading + yaw_rate * dt);

  const double climb_cap = std::min(limits.climb_rate_max,
                                    v * std::sin(limits.effectiveClimbAngle(v)));
  const double vz = std::clamp(climb_cmd, -climb_cap, climb_cap);
  next.pitch = std::asin(std::clamp(vz / v, -1.0, 1.0));

  const double vh = std::sqrt(std::max(0.0, v * v - vz * vz));
  const Vector2d ground = vh * bearingDir(next.heading) + wind.vector();
  next.position.head<2>() += ground * dt;
  next.position.z() += vz * dt;
  return next;
}

}  // namespace skysweep
