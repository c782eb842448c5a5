#ifndef SKYSWEEP_AVOIDANCE_HPP_
#define SKYSWEEP_AVOIDANCE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "skysweep/grid.hpp"
#include "skysweep/motion.hpp"
#include "skysweep/world.hpp"

namespace skysweep {

struct AvoidanceConfig {
  double safety_clearance = 3.0;  // d_buff [m]
  int max_dodge_points = 8;
  double intercept_step = 0.1;  // s, sampling of swept interception tests

  void validate() const {
    if (!(safety_clearance > 0.0)) throw ValidationError("safety_clearance must be positive");
    if (max_dodge_points < 1) throw ValidationError("max_dodge_points must be >= 1");
    if (!(intercept_step > 0.0)) throw ValidationError("intercept_step must be positive");
  }
};

struct DodgeInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Slopes of the two tangent lines from p to the circle. Throws when p lies
/// on or inside the circle, or when one tangent is vertical (|p.x - c.x| =
/// r) and a slope cannot represent it; geometry that must survive that case
/// uses tangentPoints instead.
std::pair<double, double> tangentSlopes(const Vector2d& p, const Vector2d& center, double r);

/// The two points where tangents from p touch the circle, from the
/// radius-slope closed form with quadrant recovery via the tangency
/// condition (p - c) . (t - c) = r^2. Robust to vertical tangents.
std::array<Vector2d, 2> tangentPoints(const Vector2d& p, const Vector2d& center, double r);

enum class DodgePlane { Yaw, Pitch };

struct DodgeCandidate {
  Vector3d position{0.0, 0.0, 0.0};
  DodgePlane plane = DodgePlane::Yaw;
  double angle_change = 0.0;  // signed, rad
};

/// Tangentially closest periphery point for a pop-up cylinder: yaw-plane
/// candidates on the buffered circle and the climb-over candidate just
/// before the obstacle at h_obst + d_buff. Feasible candidates compete on
/// the magnitude of the required angle change; ties go to the lower-risk
/// side when a grid is supplied. Obstacles thinner than the turn radius are
/// inflated to it. Returns nullopt when no plane is feasible.
std::optional<DodgeCandidate> staticDodge(const PathNode& uav, const PathNode& target,
                                          const StaticObstacle& obst, const AvoidanceConfig& cfg,
                                          const UavConstraints& limits,
                                          const OccupancyGrid* grid = nullptr);

/// Minimum clearance between a constant-speed transit from `from` to `to`
/// starting at t_start and the moving sphere, sampled every `step` seconds.
/// Clearance is to the sphere surface; the caller passes an inflated radius
/// to test buffered interception.
double sweptMinClearance(const Vector3d& from, const Vector3d& to, double t_start, double speed,
                         const DynamicObstacle& obst, double radius, double step);

/// Sequence of dodge points steering clear of a moving sphere. Each iterate
/// is generated from the obstacle position at the predicted arrival time at
/// the previous point (advanced to the leg's closest approach when the leg
/// itself would still intercept), and the sequence ends when the straight
/// bearing to the target stays clear of the swept buffered sphere. Throws
/// DodgeInfeasible when max_dodge_points is exhausted.
std::vector<DodgeCandidate> dynamicDodge(const PathNode& uav, const PathNode& target,
                                         const DynamicObstacle& obst, double t_now,
                                         const AvoidanceConfig& cfg,
                                         const UavConstraints& limits);

/// Smooth motion primitive between consecutive path nodes with any dodge
/// points folded in: the composed Dubins trajectory is checked against every
/// obstacle known at time t and rebuilt through tangential dodge waypoints
/// until it keeps d_buff clearance. Throws when no feasible dodge exists.
Trajectory smoothSegment(const PathNode& a, const PathNode& b, const WorldState& world, double t,
                         const AvoidanceConfig& cfg, const UavConstraints& limits,
                         double sample_step, const OccupancyGrid* grid = nullptr);

}  // namespace skysweep

#endif  // SKYSWEEP_AVOIDANCE_HPP_
