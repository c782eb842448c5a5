#include "skysweep/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skysweep {

const char* actionName(ActionKind kind) {
  switch (kind) {
    case ActionKind::Continue: return "continue";
    case ActionKind::AdjustSpeed: return "adjust_speed";
    case ActionKind::LocalDodge: return "local_dodge";
    case ActionKind::GlobalReplan: return "global_replan";
    case ActionKind::DivertToMilestone: return "divert_to_milestone";
    case ActionKind::ReturnToLastSafe: return "return_to_last_safe";
    case ActionKind::ReturnHome: return "return_home";
  }
  return "unknown";
}

std::vector<ThreatAssessment> assess(const WorldState& world, double t, const Trajectory& traj,
                                     double speed, const AvoidanceConfig& cfg,
                                     double horizon_s) {
  std::vector<ThreatAssessment> out;
  if (traj.samples.empty()) return out;
  const double v = std::max(speed, 1e-6);
  const double max_arc = std::min(traj.length(), horizon_s * v);

  const auto statics = world.staticsAt(t);
  const auto dynamics = world.dynamicsAt(t);

  auto scan = [&](int id, bool dynamic, auto&& separation, double r_buff) {
    double miss = std::numeric_limits<double>::infinity();
    double first = -1.0, last = -1.0;
    for (const auto& s : traj.samples) {
      if (s.s > max_arc) break;
      const double sep = separation(s);  // distance to the obstacle center
      miss = std::min(miss, sep);
      if (sep < r_buff) {
        if (first < 0.0) first = s.s;
        last = s.s;
      }
    }
    if (first >= 0.0) {
      ThreatAssessment a;
      a.obstacle_id = id;
      a.dynamic = dynamic;
      a.time_to_intercept = first / v;
      a.first_arc = first;
      a.last_arc = last;
      a.miss_distance = miss;
      out.push_back(a);
    }
  };

  for (std::size_t i = 0; i < statics.size(); ++i) {
    const StaticObstacle& o = *statics[i];
    const double r_buff = o.radius + cfg.safety_clearance;
    scan(static_cast<int>(i), false,
         [&](const TrajectorySample& s) { return clearance(s.position, o) + o.radius; }, r_buff);
  }
  for (std::size_t i = 0; i < dynamics.size(); ++i) {
    const DynamicObstacle& o = *dynamics[i];
    const double r_buff = o.radius + cfg.safety_clearance;
    scan(static_cast<int>(i), true,
         [&](const TrajectorySample& s) {
           const double t_here = std::max(t + s.s / v, o.spawn_time);
           return (s.position - o.positionAt(t_here)).norm();
         },
         r_buff);
  }

  std::sort(out.begin(), out.end(), [](const ThreatAssessment& a, const ThreatAssessment& b) {
    if (a.time_to_intercept != b.time_to_intercept)
      return a.time_to_intercept < b.time_to_intercept;
    if (a.dynamic != b.dynamic) return !a.dynamic;
    return a.obstacle_id < b.obstacle_id;
  });

  // Convert center distances to surface miss distances.
  for (auto& a : out) {
    const double radius = a.dynamic ? dynamics[static_cast<std::size_t>(a.obstacle_id)]->radius
                                    : statics[static_cast<std::size_t>(a.obstacle_id)]->radius;
    a.miss_distance = std::max(0.0, a.miss_distance - radius);
  }
  return out;
}

namespace {

int nearestUnvisitedSafe(const MissionSnapshot& ctx) {
  double best = std::numeric_limits<double>::infinity();
  int pick = -1;
  for (const auto& m : ctx.milestones) {
    if (m.status != MilestoneStatus::Unvisited) continue;
    const double d = (m.position - ctx.uav_position).norm();
    if (d < best) {
      best = d;
      pick = m.tour_index;
    }
  }
  return pick;
}

bool allResolved(const MissionSnapshot& ctx) {
  return std::all_of(ctx.milestones.begin(), ctx.milestones.end(), [](const Milestone& m) {
    return m.status != MilestoneStatus::Unvisited;
  });
}

}  // namespace

PolicyAction decide(const std::vector<ThreatAssessment>& threats, const MissionSnapshot& ctx,
                    const PolicyConfig& cfg) {
  cfg.validate();
  PolicyAction action;

  if (ctx.replan_failed) {
    const int divert = nearestUnvisitedSafe(ctx);
    if (divert >= 0) {
      action.kind = ActionKind::DivertToMilestone;
      action.milestone = divert;
      action.reason = "replan failed; diverting to nearest unvisited safe milestone";
    } else if (ctx.last_safe_milestone >= 0) {
      action.kind = ActionKind::ReturnToLastSafe;
      action.reason = "replan failed with no unvisited milestone left";
    } else {
      action.kind = ActionKind::ReturnHome;
      action.reason = "replan failed before any milestone was reached";
    }
    return action;
  }

  if (ctx.dodge_infeasible) {
    action.kind = ActionKind::GlobalReplan;
    action.reason = "local dodge infeasible; amending the global path";
    return action;
  }

  if (threats.empty()) {
    if (allResolved(ctx)) {
      action.kind = ActionKind::ReturnHome;
      action.reason = "every milestone visited or unsafe";
    } else {
      action.kind = ActionKind::Continue;
      action.reason = "path clear";
    }
    return action;
  }

  const ThreatAssessment& lead = threats.front();
  if (lead.dynamic && lead.time_to_intercept > cfg.far_threat_horizon &&
      ctx.slowdown_resolves && ctx.speed_factor - cfg.speed_quantum >= cfg.min_speed_factor) {
    action.kind = ActionKind::AdjustSpeed;
    action.speed_factor = ctx.speed_factor - cfg.speed_quantum;
    action.reason = "distant crossing traffic; re-timing the transit";
    return action;
  }

  action.kind = ActionKind::LocalDodge;
  action.reason = std::string(lead.dynamic ? "dynamic" : "static") +
                  " obstacle intercepts the path in " +
                  std::to_string(lead.time_to_intercept) + " s";
  return action;
}

}  // namespace skysweep
