#include "swarm/terrain.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace swarm {

double terrain_speed_factor(Vec2 pos, const Terrain& terrain) {
    assert(terrain.in_bounds(pos));
    double factor = 1.0;
    for (const auto& hill : terrain.hills) {
        if (distance(pos, hill.center) <= hill.radius) factor *= hill.speed_factor;
    }
    return factor;
}

Clearance obstacle_clearance(Vec2 pos, const Terrain& terrain) {
    Clearance best{std::numeric_limits<double>::infinity(), {0.0, 0.0}, false};
    for (const auto& obstacle : terrain.obstacles) {
        const Vec2 offset = pos - obstacle.center;
        const double center_dist = offset.norm();
        const double d = center_dist - obstacle.radius;
        if (!best.has_obstacle || d < best.distance) {
            // A point exactly at the center has no defined direction; pick +x.
            const Vec2 away = center_dist > 0.0 ? offset / center_dist : Vec2{1.0, 0.0};
            best = {d, away, true};
        }
    }
    return best;
}

namespace {

Vec2 clamp_to_field(Vec2 p, double side) {
    return {std::clamp(p.x, 0.0, side), std::clamp(p.y, 0.0, side)};
}

}  // namespace

Vec2 resolve_contacts(Vec2 pos, const Terrain& terrain, double body_radius) {
    Vec2 p = clamp_to_field(pos, terrain.side);
    // Overlapping obstacles can push a body back and forth; a few sweeps settle it.
    for (int sweep = 0; sweep < 8; ++sweep) {
        bool moved = false;
        for (const auto& obstacle : terrain.obstacles) {
            const double min_dist = obstacle.radius + body_radius;
            const Vec2 offset = p - obstacle.center;
            const double d = offset.norm();
            if (d < min_dist) {
                const Vec2 dir = d > 0.0 ? offset / d : Vec2{1.0, 0.0};
                p = clamp_to_field(obstacle.center + dir * min_dist, terrain.side);
                moved = true;
            }
        }
        if (!moved) break;
    }
    return p;
}

}  // namespace swarm
