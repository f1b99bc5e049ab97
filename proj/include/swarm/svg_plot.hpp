#pragma once

#include <string>

#include "swarm/engine.hpp"

namespace swarm {

inline constexpr double kPixelsPerMeter = 200.0;

/// Top-view trajectory plot: field, hills and obstacles, goal, one path per agent
/// (followers blue, leader yellow), red rings where an agent was stimulated (at most
/// one per agent per second), black dots at final positions.
std::string render_trajectory_svg(const TrialLog& log);

}  // namespace swarm
