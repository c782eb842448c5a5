#include "skysweep/avoidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skysweep {

std::pair<double, double> tangentSlopes(const Vector2d& p, const Vector2d& center, double r) {
  const double x = p.x() - center.x();
  const double y = p.y() - center.y();
  const double l2 = x * x + y * y;
  if (l2 <= r * r) throw std::invalid_argument("no external tangent: point on or inside circle");
  const double denom = r * r - x * x;
  if (std::abs(denom) < 1e-9 * std::max(1.0, l2))
    throw std::invalid_argument("tangent line is vertical; slope form degenerate");
  const double disc = r * std::sqrt(l2 - r * r);
  return {(x * y + disc) / denom, (x * y - disc) / denom};
}

std::array<Vector2d, 2> tangentPoints(const Vector2d& p, const Vector2d& center, double r) {
  const double x = p.x() - center.x();
  const double y = p.y() - center.y();
  const double l2 = x * x + y * y;
  if (l2 <= r * r) throw std::invalid_argument("no external tangent: point on or inside circle");
  const double disc = r * std::sqrt(l2 - r * r);

  std::array<Vector2d, 2> out;
  const double num = x * x - r * r;
  const Vector2d rel{x, y};
  for (int branch = 0; branch < 2; ++branch) {
    const double denom = x * y + (branch == 0 ? disc : -disc);
    // Angle of the radius toward the tangency point; the slope form loses
    // the quadrant, recovered below from the tangency condition.
    double xi;
    if (std::abs(denom) < 1e-12 * std::max(1.0, std::abs(num)))
      xi = kPi / 2;
    else
      xi = std::atan(num / denom);
    Vector2d u{std::cos(xi), std::sin(xi)};
    if (rel.dot(u) < 0.0) u = -u;  // tangency requires (p - c) . u = r > 0
    out[static_cast<std::size_t>(branch)] = center + r * u;
  }
  return out;
}

namespace {

/// Horizontal turn from the current leg bearing must fit before the point.
bool yawChangeFeasible(const Vector2d& from_xy, const Vector2d& to_xy, double dpsi,
                       double turn_radius) {
  const double dist = (to_xy - from_xy).norm();
  return dist >= 2.0 * turn_radius * std::sin(0.5 * std::abs(dpsi)) - 1e-9;
}

struct PitchLimits {
  double up;
  double down;
};

PitchLimits pitchLimits(const UavConstraints& limits, double v) {
  return {limits.effectiveClimbAngle(v),
          std::min(std::abs(limits.min_pitch), limits.effectiveClimbAngle(v))};
}

bool pitchAngleFeasible(double theta, const PitchLimits& lim) {
  return theta <= lim.up + 1e-9 && theta >= -lim.down - 1e-9;
}

std::optional<DodgeCandidate> pickBest(std::vector<DodgeCandidate>& candidates,
                                       const OccupancyGrid* grid) {
  if (candidates.empty()) return std::nullopt;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const DodgeCandidate& a, const DodgeCandidate& b) {
                     const double da = std::abs(a.angle_change);
                     const double db = std::abs(b.angle_change);
                     if (std::abs(da - db) > 1e-9) return da < db;
                     if (grid) return grid->riskAt(a.position) < grid->riskAt(b.position);
                     return false;
                   });
  return candidates.front();
}

}  // namespace

std::optional<DodgeCandidate> staticDodge(const PathNode& uav, const PathNode& target,
                                          const StaticObstacle& obst, const AvoidanceConfig& cfg,
                                          const UavConstraints& limits,
                                          const OccupancyGrid* grid) {
  const double r_eff = std::max(obst.radius, limits.turn_radius);
  const double r_buff = r_eff + cfg.safety_clearance;
  const Vector2d uav_xy = uav.position.head<2>();
  const Vector2d to_target = (target.position - uav.position).head<2>();
  const double psi_init = bearingOf(to_target);
  const double v = std::max(uav.speed, 1e-6);

  std::vector<DodgeCandidate> candidates;

  if ((uav_xy - obst.center).norm() > r_buff) {
    for (const Vector2d& t : tangentPoints(uav_xy, obst.center, r_buff)) {
      const double psi_fin = bearingOf(t - uav_xy);
      const double dpsi = wrapPi(psi_fin - psi_init);
      if (!yawChangeFeasible(uav_xy, t, dpsi, limits.turn_radius)) continue;
      DodgeCandidate c;
      c.position = Vector3d(t.x(), t.y(), uav.position.z());  // yaw keeps altitude
      c.plane = DodgePlane::Yaw;
      c.angle_change = dpsi;
      candidates.push_back(c);
    }
  }

  // Climb-over: a point short of the obstacle axis, d_buff above the cap.
  {
    const Vector2d w = to_target.norm() > 1e-12 ? Vector2d(to_target.normalized())
                                                : bearingDir(uav.heading);
    const double along = (obst.center - uav_xy).dot(w);
    if (along > r_buff + 1e-9) {
      const double eta = along - r_buff;
      const double z_dodge = obst.height + cfg.safety_clearance;
      const double theta_init =
          std::atan2(target.position.z() - uav.position.z(), to_target.norm());
      const double theta_fin = std::atan2(z_dodge - uav.position.z(), eta);
      if (pitchAngleFeasible(theta_fin, pitchLimits(limits, v))) {
        DodgeCandidate c;
        c.position = Vector3d(uav_xy.x() + eta * w.x(), uav_xy.y() + eta * w.y(), z_dodge);
        c.plane = DodgePlane::Pitch;
        c.angle_change = wrapPi(theta_fin - theta_init);
        candidates.push_back(c);
      }
    }
  }

  return pickBest(candidates, grid);
}

double sweptMinClearance(const Vector3d& from, const Vector3d& to, double t_start, double speed,
                         const DynamicObstacle& obst, double radius, double step) {
  const double len = (to - from).norm();
  const double duration = len / std::max(speed, 1e-6);
  const int n = std::max(1, int(std::ceil(duration / step)));
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double tau = duration * double(i) / double(n);
    const double t = t_start + tau;
    if (t < obst.spawn_time) continue;
    const Vector3d uav_p = len > 1e-12 ? Vector3d(from + (to - from) * (tau / duration)) : from;
    best = std::min(best, (uav_p - obst.positionAt(t)).norm() - radius);
  }
  return best;
}

namespace {

/// Time of closest approach between the leg transit and the moving sphere.
double closestApproachTime(const Vector3d& from, const Vector3d& to, double t_start,
                           double speed, const DynamicObstacle& obst, double step) {
  const double len = (to - from).norm();
  const double duration = len / std::max(speed, 1e-6);
  const int n = std::max(1, int(std::ceil(duration / step)));
  double best = std::numeric_limits<double>::infinity();
  double best_t = t_start;
  for (int i = 0; i <= n; ++i) {
    const double tau = duration * double(i) / double(n);
    const double t = t_start + tau;
    if (t < obst.spawn_time) continue;
    const Vector3d uav_p = len > 1e-12 ? Vector3d(from + (to - from) * (tau / duration)) : from;
    const double d = (uav_p - obst.positionAt(t)).norm();
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  return best_t;
}

std::optional<DodgeCandidate> dynamicDodgeCandidate(const Vector3d& q, double leg_psi,
                                                    double leg_theta, const Vector3d& target,
                                                    const Vector3d& obst_center, double r_buff,
                                                    const UavConstraints& limits, double v) {
  std::vector<DodgeCandidate> candidates;
  const Vector2d q_xy = q.head<2>();
  const Vector2d c_xy = obst_center.head<2>();

  if ((q_xy - c_xy).norm() > r_buff) {
    for (const Vector2d& t : tangentPoints(q_xy, c_xy, r_buff)) {
      const double dpsi = wrapPi(bearingOf(t - q_xy) - leg_psi);
      if (!yawChangeFeasible(q_xy, t, dpsi, limits.turn_radius)) continue;
      DodgeCandidate c;
      c.position = Vector3d(t.x(), t.y(), q.z());
      c.plane = DodgePlane::Yaw;
      c.angle_change = dpsi;
      candidates.push_back(c);
    }
  }

  // Pitch-plane tangents: the vertical plane through q toward the target,
  // coordinates (along-track, z).
  const Vector2d to_target = (target - q).head<2>();
  if (to_target.norm() > 1e-9) {
    const Vector2d w = to_target.normalized();
    const Vector2d plane_center{(c_xy - q_xy).dot(w), obst_center.z()};
    const Vector2d plane_q{0.0, q.z()};
    if ((plane_q - plane_center).norm() > r_buff) {
      const PitchLimits lim = pitchLimits(limits, v);
      for (const Vector2d& t : tangentPoints(plane_q, plane_center, r_buff)) {
        if (t.x() <= 1e-9) continue;  // must lie ahead along the leg
        const double theta_fin = std::atan2(t.y() - q.z(), t.x());
        if (!pitchAngleFeasible(theta_fin, lim)) continue;
        DodgeCandidate c;
        c.position = Vector3d(q_xy.x() + t.x() * w.x(), q_xy.y() + t.x() * w.y(), t.y());
        c.plane = DodgePlane::Pitch;
        c.angle_change = wrapPi(theta_fin - leg_theta);
        candidates.push_back(c);
      }
    }
  }
  return pickBest(candidates, nullptr);
}

}  // namespace

std::vector<DodgeCandidate> dynamicDodge(const PathNode& uav, const PathNode& target,
                                         const DynamicObstacle& obst, double t_now,
                                         const AvoidanceConfig& cfg,
                                         const UavConstraints& limits) {
  const double r_eff = std::max(obst.radius, limits.turn_radius);
  const double r_buff = r_eff + cfg.safety_clearance;
  const double v = std::max(uav.speed, 1e-6);

  std::vector<DodgeCandidate> points;
  Vector3d q = uav.position;
  double t_q = t_now;
  double leg_psi = uav.heading;
  double leg_theta = 0.0;

  for (int k = 0; k < cfg.max_dodge_points; ++k) {
    if (sweptMinClearance(q, target.position, t_q, v, obst, r_buff, cfg.intercept_step) > 0.0)
      return points;  // bearing to the target is clear

    // Generate the next dodge point from the snapshot at the arrival time of
    // the previous point; when the connecting leg would still intercept,
    // advance the snapshot to the leg's closest approach and retry.
    double t_snap = std::max(t_q, obst.spawn_time);
    std::optional<DodgeCandidate> accepted;
    for (int round = 0; round < 5; ++round) {
      const Vector3d center = obst.positionAt(t_snap);
      std::optional<DodgeCandidate> cand =
          dynamicDodgeCandidate(q, leg_psi, leg_theta, target.position, center, r_buff, limits,
                                v);
      if (!cand) break;
      if (sweptMinClearance(q, cand->position, t_q, v, obst, r_buff, cfg.intercept_step) > 0.0) {
        accepted = cand;
        break;
      }
      const double t_cpa =
          closestApproachTime(q, cand->position, t_q, v, obst, cfg.intercept_step);
      if (t_cpa <= t_snap + 1e-9) {
        accepted = cand;  // lead converged; take the candidate as-is
        break;
      }
      t_snap = t_cpa;
      accepted = cand;
    }
    if (!accepted)
      throw DodgeInfeasible("no feasible dodge plane against the moving obstacle");

    points.push_back(*accepted);
    const Vector3d leg = accepted->position - q;
    t_q += leg.norm() / v;
    if (leg.head<2>().norm() > 1e-9) leg_psi = bearingOf(leg.head<2>());
    leg_theta = std::atan2(leg.z(), leg.head<2>().norm());
    q = accepted->position;
  }

  if (sweptMinClearance(q, target.position, t_q, v, obst, r_buff, cfg.intercept_step) > 0.0)
    return points;
  throw DodgeInfeasible("dodge sequence exhausted max_dodge_points without steering clear");
}

namespace {

struct Violation {
  double arc = 0.0;
  int static_idx = -1;
  int dynamic_idx = -1;
};

/// First point along the trajectory that gets closer than `clearance` to an
/// obstacle known at mission time t (dynamic obstacles evaluated at the
/// predicted transit times).
std::optional<Violation> firstViolation(const Trajectory& traj, const WorldState& world,
                                        double t, double v, double clearance) {
  const auto statics = world.staticsAt(t);
  const auto dynamics = world.dynamicsAt(t);
  for (const auto& s : traj.samples) {
    for (std::size_t i = 0; i < statics.size(); ++i)
      if (skysweep::clearance(s.position, *statics[i]) < clearance)
        return Violation{s.s, static_cast<int>(i), -1};
    const double t_here = t + s.s / std::max(v, 1e-6);
    for (std::size_t i = 0; i < dynamics.size(); ++i) {
      if (t_here < dynamics[i]->spawn_time) continue;
      if (sphereClearance(s.position, dynamics[i]->positionAt(t_here), dynamics[i]->radius) <
          clearance)
        return Violation{s.s, -1, static_cast<int>(i)};
    }
  }
  return std::nullopt;
}

}  // namespace

Trajectory smoothSegment(const PathNode& a, const PathNode& b, const WorldState& world, double t,
                         const AvoidanceConfig& cfg, const UavConstraints& limits,
                         double sample_step, const OccupancyGrid* grid) {
  cfg.validate();
  std::vector<PathNode> chain{a, b};
  const double v = std::max(a.speed, 1e-6);

  auto rebuild = [&] {
    Trajectory traj;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      traj.append(dubins3d(chain[i], chain[i + 1], limits, sample_step));
    return traj;
  };

  Trajectory traj = rebuild();
  AvoidanceConfig local = cfg;
  int last_static = -2, last_dynamic = -2;
  for (int round = 0; round < cfg.max_dodge_points; ++round) {
    const auto violation = firstViolation(traj, world, t, v, cfg.safety_clearance);
    if (!violation) return traj;

    // A repeat offender means the Dubins arc still clips the buffered
    // circle; widen the clearance used for placement and redo its dodge.
    const bool repeat = violation->static_idx == last_static &&
                        violation->dynamic_idx == last_dynamic && round > 0;
    if (repeat) {
      local.safety_clearance *= 1.5;
      chain.assign({a, b});
    } else {
      local.safety_clearance = cfg.safety_clearance;
    }
    last_static = violation->static_idx;
    last_dynamic = violation->dynamic_idx;

    // The chord segment whose span contains the violation.
    std::size_t seg = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const double leg = (chain[i + 1].position - chain[i].position).norm();
      if (violation->arc <= acc + leg + 1e-9 || i + 2 == chain.size()) {
        seg = i;
        break;
      }
      acc += leg;
    }

    PathNode from = chain[seg];
    PathNode to = chain[seg + 1];
    std::vector<PathNode> inserted;
    if (violation->static_idx >= 0) {
      const auto cand = staticDodge(from, to, *world.staticsAt(t)[static_cast<std::size_t>(
                                        violation->static_idx)],
                                    local, limits, grid);
      if (!cand) throw DodgeInfeasible("static dodge infeasible within vehicle limits");
      PathNode d;
      d.position = cand->position;
      d.speed = v;
      d.risk = grid ? grid->riskAt(cand->position) : 0.0;
      inserted.push_back(d);
    } else {
      const double t_from = t + traj.closestArcLength(from.position) / v;
      const auto seq = dynamicDodge(from, to,
                                    *world.dynamicsAt(t)[static_cast<std::size_t>(
                                        violation->dynamic_idx)],
                                    t_from, local, limits);
      for (const auto& c : seq) {
        PathNode d;
        d.position = c.position;
        d.speed = v;
        d.risk = grid ? grid->riskAt(c.position) : 0.0;
        inserted.push_back(d);
      }
      if (inserted.empty()) {
        // The segment timing already clears the obstacle; nothing to insert.
        return traj;
      }
    }
    chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(seg) + 1, inserted.begin(),
                 inserted.end());

    // Headings through the chain follow the travel direction.
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      const Vector2d d = (chain[i].position - chain[i - 1].position).head<2>();
      if (d.norm() > 1e-9) chain[i].heading = bearingOf(d);
    }
    traj = rebuild();
  }

  const auto still = firstViolation(traj, world, t, v, cfg.safety_clearance);
  if (still) throw DodgeInfeasible("segment could not be cleared within the dodge budget");
  return traj;
}

}  // namespace skysweep
