#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarm/world.hpp"

namespace swarm {

/// One neighbor as seen in the observer's body frame.
struct NeighborObs {
    double range = 0.0;             // m, in (0, R_s]
    double bearing = 0.0;           // rad in [-pi, pi), 0 = straight ahead, CCW positive
    bool is_leader = false;
    double relative_heading = 0.0;  // neighbor heading minus observer heading, wrapped

    bool operator==(const NeighborObs&) const = default;
};

/// Goal information; only the leader ever receives it.
struct GoalObs {
    double bearing = 0.0;
    double range = 0.0;
    double radius = 0.0;

    bool operator==(const GoalObs&) const = default;
};

/// Everything a controller may see. No absolute coordinates, no terrain.
struct Observation {
    std::vector<NeighborObs> neighbors;  // ascending range, ties by agent id
    double self_speed = 0.0;
    std::optional<GoalObs> goal;

    bool operator==(const Observation&) const = default;
};

/// Builds the local view of `observer_id`. Throws std::out_of_range for an unknown id.
Observation observe(int observer_id, std::span<const AgentState> states, const Terrain& terrain,
                    const SimParams& params);

}  // namespace swarm
