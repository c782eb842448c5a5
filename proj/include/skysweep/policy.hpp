#ifndef SKYSWEEP_POLICY_HPP_
#define SKYSWEEP_POLICY_HPP_

#include <string>
#include <vector>

#include "skysweep/avoidance.hpp"
#include "skysweep/planner.hpp"
#include "skysweep/world.hpp"

namespace skysweep {

/// One predicted conflict between the flown trajectory and an obstacle.
struct ThreatAssessment {
  int obstacle_id = -1;  // index into statics or dynamics
  bool dynamic = false;
  double time_to_intercept = 0.0;  // s from now
  double miss_distance = 0.0;      // predicted min separation from the surface [m]
  double first_arc = 0.0;          // affected arc-length range on the trajectory
  double last_arc = 0.0;
};

enum class ActionKind {
  Continue,
  AdjustSpeed,
  LocalDodge,
  GlobalReplan,
  DivertToMilestone,
  ReturnToLastSafe,
  ReturnHome,
};

const char* actionName(ActionKind kind);

struct PolicyAction {
  ActionKind kind = ActionKind::Continue;
  double speed_factor = 1.0;  // for AdjustSpeed, multiplier on cruise
  int milestone = -1;         // for DivertToMilestone
  std::string reason;
};

/// Tier thresholds. None of these values come from the source material;
/// they are deliberate configuration, strictly ordered far > near.
struct PolicyConfig {
  double far_threat_horizon = 30.0;   // s, beyond this a timing fix may suffice
  double near_threat_horizon = 10.0;  // s
  double speed_quantum = 0.1;         // fraction of cruise shed per adjustment
  double min_speed_factor = 0.7;      // velocity variation floor, x cruise
  int replan_retry_cap = 2;           // replans before a milestone goes unsafe

  void validate() const {
    if (!(far_threat_horizon > near_threat_horizon))
      throw ValidationError("policy horizons must be ordered far > near");
    if (!(speed_quantum > 0.0 && speed_quantum < 1.0))
      throw ValidationError("speed_quantum out of (0, 1)");
    if (!(min_speed_factor > 0.0 && min_speed_factor <= 1.0))
      throw ValidationError("min_speed_factor out of (0, 1]");
    if (replan_retry_cap < 1) throw ValidationError("replan_retry_cap must be >= 1");
  }
};

/// Escalation state the mission loop has established for the leading threat.
/// decide() is a pure function of this snapshot.
struct MissionSnapshot {
  std::vector<Milestone> milestones;  // tour order, current statuses
  Vector3d uav_position{0.0, 0.0, 0.0};
  double speed_factor = 1.0;
  bool slowdown_resolves = false;   // re-timed transit clears the threat
  bool dodge_infeasible = false;    // local planner failed on this threat
  bool replan_failed = false;       // grid replan failed or came back risky
  int last_safe_milestone = -1;     // tour index of the last visited milestone
};

/// Swept-conflict scan of the remaining trajectory against every obstacle
/// known at time t, sorted by time to intercept. `horizon` limits the
/// look-ahead arc length; speed converts arc length to transit time.
std::vector<ThreatAssessment> assess(const WorldState& world, double t, const Trajectory& traj,
                                     double speed, const AvoidanceConfig& cfg, double horizon_s);

/// Deterministic action selection: continue when clear; shed speed for far
/// threats that timing resolves; otherwise dodge locally; escalate to a grid
/// replan when the dodge is infeasible; divert to the nearest unvisited safe
/// milestone (or back to the last safe one) when the replan also fails; and
/// return home once every milestone is visited or unsafe.
PolicyAction decide(const std::vector<ThreatAssessment>& threats, const MissionSnapshot& ctx,
                    const PolicyConfig& cfg);

}  // namespace skysweep

#endif  // SKYSWEEP_POLICY_HPP_
