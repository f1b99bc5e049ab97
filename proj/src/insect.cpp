#include "swarm/insect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swarm/terrain.hpp"

namespace swarm {

InsectProfile sample_profile(Rng& rng, const InsectParams& baseline) {
    InsectProfile p;
    p.free_speed = baseline.free_speed;
    p.turn_gain = baseline.turn_gain;
    p.accel_gain = baseline.accel_gain;
    p.heading_noise_sigma = baseline.heading_noise_sigma;
    // Always draw, so the stream position does not depend on sigma_log.
    const double z = standard_normal(rng);
    p.gain_multiplier = baseline.sigma_log > 0.0 ? std::exp(baseline.sigma_log * z) : 1.0;
    return p;
}

namespace {

double heading_noise(Rng& rng, double sigma, double dt) {
    if (sigma <= 0.0) return 0.0;
    return sigma * std::sqrt(dt) * standard_normal(rng);
}

// Signed turn rate steering away from nearby neighbors and obstacles, in rad/s.
double avoidance_rate(const AgentState& state, const Observation& obs, const Terrain& terrain,
                      const SimParams& params, const InsectParams& insect) {
    const double d_avoid = params.avoid_distance;
    double rate = 0.0;
    for (const auto& n : obs.neighbors) {
        if (n.range >= d_avoid) break;  // sorted by range
        if (std::abs(n.bearing) > kPi / 2) continue;
        const double proximity = 1.0 - n.range / d_avoid;
        // Turning by +d moves the neighbor's bearing by -d; push it toward the side.
        rate += (n.bearing > 0.0 ? -1.0 : 1.0) * proximity;
    }
    const Clearance c = obstacle_clearance(state.position, terrain);
    if (c.has_obstacle) {
        const double gap = c.distance - params.body_radius;
        const double away_bearing = wrap_angle(c.away.angle() - state.heading);
        if (gap < d_avoid && std::abs(away_bearing) > kPi / 2) {
            const double proximity = 1.0 - std::max(gap, 0.0) / d_avoid;
            rate += (away_bearing > 0.0 ? 1.0 : -1.0) * proximity;
        }
    }
    return insect.avoid_turn_gain * rate;
}

AgentState integrate(AgentState next, const Terrain& terrain, const SimParams& params,
                     double dt) {
    const Vec2 moved = next.position + unit_from_angle(next.heading) * (next.speed * dt);
    next.position = resolve_contacts(moved, terrain, params.body_radius);
    return next;
}

}  // namespace

AgentState free_motion_step(const AgentState& state, const Observation& obs,
                            const Terrain& terrain, const InsectProfile& profile,
                            const SimParams& params, const InsectParams& insect, Rng& rng,
                            double dt) {
    AgentState next = state;
    const double turn = std::clamp(avoidance_rate(state, obs, terrain, params, insect) * dt,
                                   -kPi / 2, kPi / 2);
    next.heading =
        wrap_angle(state.heading + turn + heading_noise(rng, profile.heading_noise_sigma, dt));

    const double target = profile.free_speed * terrain_speed_factor(state.position, terrain);
    const double blend = std::min(1.0, dt / insect.speed_relax_time);
    next.speed = std::clamp(state.speed + (target - state.speed) * blend, 0.0, profile.max_speed());
    next.stimulated = false;
    return integrate(next, terrain, params, dt);
}

AgentState stimulated_step(const AgentState& state, const StimCommand& cmd,
                           const Terrain& terrain, const InsectProfile& profile,
                           const SimParams& params, Rng& rng, double dt) {
    if (cmd.kind == StimKind::None || !(cmd.voltage > 0.0))
        throw std::invalid_argument("stimulated_step: voltage must be > 0 (use free_motion_step)");
    if (cmd.voltage > params.v_max)
        throw std::invalid_argument("stimulated_step: voltage " + std::to_string(cmd.voltage) +
                                    " V exceeds the cap");

    AgentState next = state;
    const double gain = profile.gain_multiplier * cmd.voltage;
    const double noise = heading_noise(rng, 0.5 * profile.heading_noise_sigma, dt);
    switch (cmd.kind) {
        case StimKind::SteerLeft:
            next.heading = wrap_angle(state.heading + profile.turn_gain * gain * dt + noise);
            break;
        case StimKind::SteerRight:
            next.heading = wrap_angle(state.heading - profile.turn_gain * gain * dt + noise);
            break;
        case StimKind::Accelerate:
            next.heading = wrap_angle(state.heading + noise);
            next.speed = std::min(state.speed + profile.accel_gain * gain * dt, profile.max_speed());
            break;
        case StimKind::None:
            break;
    }
    next.stimulated = true;
    return integrate(next, terrain, params, dt);
}

AgentState snag_update(const AgentState& state, const StimCommand& cmd, const Terrain& terrain,
                       const SimParams& params, const InsectParams& insect, Rng& rng, double dt) {
    AgentState next = state;
    if (state.condition.is(ConditionKind::Normal)) {
        const Clearance c = obstacle_clearance(state.position, terrain);
        if (!c.has_obstacle || state.speed <= 0.0) return next;
        const double gap = c.distance - params.body_radius;
        const bool pressing = unit_from_angle(state.heading).dot(-c.away) > 0.0;
        if (gap < 0.5 * params.body_radius && pressing && bernoulli(rng, insect.p_snag * dt)) {
            next.condition = Condition::snagged();
            next.speed = 0.0;
        }
    } else if (state.condition.is(ConditionKind::Snagged)) {
        next.speed = 0.0;
        const bool pushed = cmd.kind == StimKind::Accelerate && cmd.voltage > 0.0;
        const double rate = pushed ? insect.p_escape_stim : insect.p_escape_free;
        if (bernoulli(rng, rate * dt)) {
            const Clearance c = obstacle_clearance(state.position, terrain);
            next.condition = Condition::normal();
            if (c.has_obstacle)
                next.position = resolve_contacts(state.position + c.away * params.body_radius,
                                                 terrain, params.body_radius);
        }
    }
    return next;
}

}  // namespace swarm
