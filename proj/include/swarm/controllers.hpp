#pragma once

#include "swarm/command.hpp"
#include "swarm/perception.hpp"
#include "swarm/rng.hpp"
#include "swarm/world.hpp"

namespace swarm {

enum class DecisionKind { FreeMotion, MoveToward };

/// Output of motion planning, expressed relative to the agent's own body frame.
struct MotionDecision {
    DecisionKind kind = DecisionKind::FreeMotion;
    double target_bearing = 0.0;  // MoveToward only
    double target_range = 0.0;    // MoveToward only
    bool target_is_leader = false;
    bool lost = false;  // follower saw nobody at all

    static MotionDecision free_motion(bool lost = false) {
        return {DecisionKind::FreeMotion, 0.0, 0.0, false, lost};
    }
    static MotionDecision move_toward(double bearing, double range, bool is_leader) {
        return {DecisionKind::MoveToward, bearing, range, is_leader, false};
    }
};

/// Sector holding `bearing` when [-pi, pi) is cut into `sectors` equal slices.
/// Sector 0 starts at the agent's heading; indices grow counter-clockwise.
int sector_of(double bearing, int sectors);

/// Tour-group motion planning for a follower.
///  - at least M neighbors within the free range: free motion;
///  - otherwise head for the leader if it is visible;
///  - otherwise head for a cyborg in the most populated bearing sector
///    (ties: closest nearest-member, then lowest index).
/// `selection_rng` is required only for TargetSelection::Random.
/// Throws std::invalid_argument if the observation carries goal fields.
MotionDecision tgi_plan(const Observation& obs, const SimParams& params,
                        TargetSelection selection = TargetSelection::Nearest,
                        Rng* selection_rng = nullptr);

/// Trajectory tracking: steering gate on bearing error, then acceleration gate on speed.
/// At most one stimulation per step; voltage never exceeds v_max.
StimCommand tgi_track(const MotionDecision& decision, double self_speed, const SimParams& params);

/// Classic flocking baseline (separation, cohesion toward a leader-weighted centroid,
/// alignment). It has no free-motion rule and steers even at very short range.
MotionDecision boids_plan(const Observation& obs, const BoidsWeights& weights,
                          const SimParams& params);

/// Goal seeking for the leader; free motion once inside the goal region.
/// Throws std::invalid_argument if the observation has no goal fields.
MotionDecision leader_plan(const Observation& obs, const SimParams& params);

}  // namespace swarm
