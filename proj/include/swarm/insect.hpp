#pragma once

#include "swarm/command.hpp"
#include "swarm/perception.hpp"
#include "swarm/rng.hpp"
#include "swarm/world.hpp"

namespace swarm {

/// Behavior constants of one individual. gain_multiplier scales its response to
/// stimulation; two insects given the same voltage do not react the same way.
struct InsectProfile {
    double free_speed = 0.06;
    double turn_gain = 1.2;
    double accel_gain = 0.08;
    double heading_noise_sigma = 0.4;
    double gain_multiplier = 1.0;

    double max_speed() const { return 2.0 * free_speed; }
    bool operator==(const InsectProfile&) const = default;
};

/// Baseline fields from `baseline`; gain_multiplier ~ LogNormal(0, baseline.sigma_log).
InsectProfile sample_profile(Rng& rng, const InsectParams& baseline);

/// Unstimulated motion: correlated random walk plus innate avoidance of neighbors and
/// obstacles. Speed relaxes toward the terrain-attenuated free speed.
AgentState free_motion_step(const AgentState& state, const Observation& obs,
                            const Terrain& terrain, const InsectProfile& profile,
                            const SimParams& params, const InsectParams& insect, Rng& rng,
                            double dt);

/// Motion under a nonzero stimulation. Neighbor avoidance is suppressed; obstacles still
/// block penetration. Throws std::invalid_argument if the voltage is not in (0, v_max].
AgentState stimulated_step(const AgentState& state, const StimCommand& cmd,
                           const Terrain& terrain, const InsectProfile& profile,
                           const SimParams& params, Rng& rng, double dt);

/// Snag/escape transitions against obstacle edges. `cmd` is the command issued to the
/// agent this step; an Accelerate command raises the escape rate.
AgentState snag_update(const AgentState& state, const StimCommand& cmd, const Terrain& terrain,
                       const SimParams& params, const InsectParams& insect, Rng& rng, double dt);

}  // namespace swarm
