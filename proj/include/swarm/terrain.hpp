#pragma once

#include "swarm/world.hpp"

namespace swarm {

/// Product of speed_factor over every hill containing pos; 1.0 outside all hills.
double terrain_speed_factor(Vec2 pos, const Terrain& terrain);

struct Clearance {
    /// Center-to-surface distance to the nearest obstacle. Negative means pos is inside it.
    /// +infinity when the terrain has no obstacles.
    double distance;
    /// Unit vector from the nearest obstacle's center through pos.
    Vec2 away;
    /// False when there are no obstacles; `away` is meaningless then.
    bool has_obstacle;
};

Clearance obstacle_clearance(Vec2 pos, const Terrain& terrain);

/// Clamps pos into the field and pushes a body of the given radius out of any obstacle.
Vec2 resolve_contacts(Vec2 pos, const Terrain& terrain, double body_radius);

}  // namespace swarm
