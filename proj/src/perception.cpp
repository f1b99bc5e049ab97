#include "swarm/perception.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swarm {

Observation observe(int observer_id, std::span<const AgentState> states, const Terrain& terrain,
                    const SimParams& params) {
    auto self = std::find_if(states.begin(), states.end(),
                             [&](const AgentState& s) { return s.id == observer_id; });
    if (self == states.end())
        throw std::out_of_range("observe: unknown observer id " + std::to_string(observer_id));

    struct Seen {
        NeighborObs obs;
        int id;
    };
    std::vector<Seen> seen;
    for (const auto& other : states) {
        if (other.id == observer_id) continue;
        const Vec2 offset = other.position - self->position;
        const double range = offset.norm();
        // Coincident bodies have no bearing; both sides skip each other symmetrically.
        if (range <= 0.0 || range > params.sensing_range) continue;
        seen.push_back({{range, wrap_angle(offset.angle() - self->heading),
                         other.role == Role::Leader, wrap_angle(other.heading - self->heading)},
                        other.id});
    }
    std::sort(seen.begin(), seen.end(), [](const Seen& a, const Seen& b) {
        return a.obs.range != b.obs.range ? a.obs.range < b.obs.range : a.id < b.id;
    });

    Observation out;
    out.neighbors.reserve(seen.size());
    for (const auto& s : seen) out.neighbors.push_back(s.obs);
    out.self_speed = self->speed;
    if (self->role == Role::Leader) {
        const Vec2 to_goal = terrain.goal.center - self->position;
        out.goal = GoalObs{wrap_angle(to_goal.angle() - self->heading), to_goal.norm(),
                           terrain.goal.radius};
    }
    return out;
}

}  // namespace swarm
