#pragma once

// Independent reference implementations used by the unit and acceptance tests.
// They are written for clarity and brute force, not speed, and do not call the
// routines they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "swarm/engine.hpp"
#include "swarm/perception.hpp"
#include "swarm/rng.hpp"
#include "swarm/world.hpp"

namespace oracle {

using swarm::AgentState;
using swarm::NeighborObs;
using swarm::Observation;
using swarm::Vec2;

/// Sector index by counting how many whole sector widths fit below the bearing,
/// measured counter-clockwise from the heading in [0, 2pi).
inline int sector_index(double bearing, int sectors) {
    const double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(bearing, two_pi);
    if (a < 0.0) a += two_pi;
    const double width = two_pi / sectors;
    int k = 0;
    while (k + 1 < sectors && a >= (k + 1) * width) ++k;
    return k;
}

struct SectorChoice {
    int sector = -1;
    double nearest_range = std::numeric_limits<double>::infinity();
    double nearest_bearing = 0.0;
};

/// Most populated sector by enumeration; ties go to the closest nearest member, then the
/// lowest index. Empty neighbor lists give sector -1.
inline SectorChoice winning_sector(const std::vector<NeighborObs>& neighbors, int sectors) {
    SectorChoice best;
    int best_count = 0;
    for (int s = 0; s < sectors; ++s) {
        int count = 0;
        double nearest = std::numeric_limits<double>::infinity();
        double bearing = 0.0;
        for (const auto& n : neighbors) {
            if (sector_index(n.bearing, sectors) != s) continue;
            ++count;
            if (n.range < nearest) {
                nearest = n.range;
                bearing = n.bearing;
            }
        }
        if (count == 0) continue;
        const bool better = count > best_count ||
                            (count == best_count && nearest < best.nearest_range);
        if (better) {
            best = {s, nearest, bearing};
            best_count = count;
        }
    }
    return best;
}

inline int count_within(const std::vector<NeighborObs>& neighbors, double radius) {
    int m = 0;
    for (const auto& n : neighbors) m += n.range <= radius ? 1 : 0;
    return m;
}

/// All unordered pairs (i < j) that may entangle: both Normal, closer than d_ent, and at
/// least one stimulated.
inline std::vector<std::pair<int, int>> eligible_pairs(const std::vector<AgentState>& agents,
                                                       double d_ent) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            const auto& a = agents[i];
            const auto& b = agents[j];
            if (a.condition.kind != swarm::ConditionKind::Normal) continue;
            if (b.condition.kind != swarm::ConditionKind::Normal) continue;
            if (!a.stimulated && !b.stimulated) continue;
            const double d = std::hypot(a.position.x - b.position.x, a.position.y - b.position.y);
            if (d < d_ent) out.emplace_back(a.id, b.id);
        }
    }
    return out;
}

/// Minimum of center-to-surface distances over every obstacle.
inline double nearest_surface(Vec2 p, const std::vector<swarm::Circle>& obstacles) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : obstacles) {
        best = std::min(best, std::hypot(p.x - o.center.x, p.y - o.center.y) - o.radius);
    }
    return best;
}

/// Random follower observation: ranges in (0, R_s], bearings uniform, optional leader.
inline Observation random_observation(std::mt19937_64& rng, const swarm::SimParams& params,
                                      int max_neighbors, double leader_probability) {
    std::uniform_int_distribution<int> count(0, max_neighbors);
    std::uniform_real_distribution<double> range(1e-3, params.sensing_range);
    std::uniform_real_distribution<double> bearing(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Observation obs;
    const int k = count(rng);
    const bool with_leader = k > 0 && u(rng) < leader_probability;
    for (int i = 0; i < k; ++i) {
        NeighborObs n;
        n.range = range(rng);
        n.bearing = bearing(rng);
        n.relative_heading = bearing(rng);
        n.is_leader = with_leader && i == 0;
        obs.neighbors.push_back(n);
    }
    std::sort(obs.neighbors.begin(), obs.neighbors.end(),
              [](const NeighborObs& a, const NeighborObs& b) { return a.range < b.range; });
    obs.self_speed = std::uniform_real_distribution<double>(0.0, 0.12)(rng);
    return obs;
}

/// Agents scattered in a small square so that many pairs sit within a few centimeters.
inline std::vector<AgentState> crowded_agents(std::mt19937_64& rng, int n, double box,
                                              double stimulated_fraction) {
    std::uniform_real_distribution<double> pos(1.0, 1.0 + box);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<AgentState> agents(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& a = agents[static_cast<std::size_t>(i)];
        a.id = i;
        a.role = i == 0 ? swarm::Role::Leader : swarm::Role::Follower;
        a.position = {pos(rng), pos(rng)};
        a.stimulated = u(rng) < stimulated_fraction;
        if (u(rng) < 0.1) a.condition = swarm::Condition::snagged();
    }
    return agents;
}

}  // namespace oracle
