#include "swarm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swarm/controllers.hpp"
#include "swarm/perception.hpp"
#include "swarm/terrain.hpp"

namespace swarm {

bool WorldState::all_reached() const {
    return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

RandomStreams RandomStreams::create(std::uint64_t seed, int n_agents) {
    RandomStreams s;
    s.agents.reserve(n_agents);
    for (int i = 0; i < n_agents; ++i) {
        const auto id = static_cast<std::uint64_t>(i);
        s.agents.push_back({make_stream(seed, id, StreamKind::Motion),
                            make_stream(seed, id, StreamKind::Snag),
                            make_stream(seed, id, StreamKind::Selection)});
    }
    s.entangle = make_stream(seed, kWorldStream, StreamKind::Entangle);
    return s;
}

double step_time(long steps, double dt) {
    return std::round(static_cast<double>(steps) * dt * 1e9) / 1e9;
}

InitialWorld init_world(const SimConfig& config, std::uint64_t seed) {
    const int n = config.n_agents;
    if (n < 2) throw std::invalid_argument("init_world: need at least 2 agents");

    const SimParams& p = config.params;
    const Rect& zone = config.terrain.start_zone;
    Rng placement = make_stream(seed, kWorldStream, StreamKind::Placement);
    std::uniform_real_distribution<double> ux(zone.x_min, zone.x_max);
    std::uniform_real_distribution<double> uy(zone.y_min, zone.y_max);
    std::uniform_real_distribution<double> uh(-kPi, kPi);

    InitialWorld out;
    WorldState& w = out.world;
    const long max_attempts = 2000L * n;
    long attempts = 0;
    while (static_cast<int>(w.agents.size()) < n) {
        if (++attempts > max_attempts)
            throw std::runtime_error("init_world: start zone too small to place " +
                                     std::to_string(n) + " non-overlapping agents");
        const Vec2 pos{ux(placement), uy(placement)};
        if (obstacle_clearance(pos, config.terrain).distance < p.body_radius) continue;
        const bool overlaps = std::any_of(w.agents.begin(), w.agents.end(), [&](const auto& a) {
            return distance(a.position, pos) < 2.0 * p.body_radius;
        });
        if (overlaps) continue;

        AgentState a;
        a.id = static_cast<int>(w.agents.size());
        a.role = a.id == 0 ? Role::Leader : Role::Follower;
        a.position = pos;
        a.heading = wrap_angle(uh(placement));
        w.agents.push_back(a);
    }
    w.reached.assign(n, false);
    w.lost.assign(n, false);

    out.profiles.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rng r = make_stream(seed, static_cast<std::uint64_t>(i), StreamKind::Profile);
        out.profiles.push_back(sample_profile(r, config.insect));
    }
    return out;
}

std::vector<Event> release_entanglements(std::vector<AgentState>& agents,
                                         std::vector<EntangledPair>& pairs,
                                         const SimParams& params, const Terrain& terrain,
                                         double time) {
    const double dt = params.dt;
    std::vector<Event> events;
    for (auto& pair : pairs) {
        if (--pair.remaining_steps <= 0) events.push_back({time, EventKind::Release, pair.a, pair.b});
    }
    for (const auto& e : events) {
        AgentState& a = agents[static_cast<std::size_t>(e.a)];
        AgentState& b = agents[static_cast<std::size_t>(e.b)];
        const Vec2 offset = b.position - a.position;
        const double r = offset.norm();
        const double gap = params.release_separation - r;
        if (gap <= 0.0) continue;
        const Vec2 u = r > 0.0 ? offset / r : unit_from_angle(a.heading);
        a.position = resolve_contacts(a.position - u * (gap / 2.0), terrain, params.body_radius);
        b.position = resolve_contacts(b.position + u * (gap / 2.0), terrain, params.body_radius);
    }
    std::erase_if(pairs, [](const EntangledPair& p) { return p.remaining_steps <= 0; });

    for (auto& a : agents) {
        if (!a.condition.is(ConditionKind::Entangled)) continue;
        long longest = 0;
        for (const auto& pair : pairs) {
            if (pair.a == a.id || pair.b == a.id) longest = std::max(longest, pair.remaining_steps);
        }
        a.condition = longest > 0 ? Condition::entangled(static_cast<double>(longest) * dt)
                                  : Condition::normal();
    }
    return events;
}

std::vector<Event> detect_entanglements(std::vector<AgentState>& agents,
                                        std::vector<EntangledPair>& pairs,
                                        const SimParams& params, Rng& rng, double time) {
    const std::size_t n = agents.size();
    const long duration_steps =
        std::max(1L, std::lround(params.entangle_duration / params.dt));

    std::vector<bool> eligible(n);
    for (std::size_t i = 0; i < n; ++i) eligible[i] = agents[i].condition.is(ConditionKind::Normal);

    std::vector<Event> events;
    std::vector<bool> caught(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!eligible[i] || !eligible[j]) continue;
            if (!agents[i].stimulated && !agents[j].stimulated) continue;
            if (distance(agents[i].position, agents[j].position) >= params.entangle_distance)
                continue;
            if (!bernoulli(rng, params.entangle_prob)) continue;
            pairs.push_back({agents[i].id, agents[j].id, duration_steps});
            events.push_back({time, EventKind::Entangle, agents[i].id, agents[j].id});
            caught[i] = caught[j] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!caught[i]) continue;
        agents[i].condition =
            Condition::entangled(static_cast<double>(duration_steps) * params.dt);
        agents[i].speed = 0.0;
    }
    return events;
}

StepOutput step(WorldState& world, std::span<const InsectProfile> profiles,
                const SimConfig& config, RandomStreams& streams) {
    const SimParams& p = config.params;
    const Terrain& terrain = config.terrain;
    const std::vector<AgentState>& prev = world.agents;
    const std::size_t n = prev.size();
    const double now = step_time(world.step + 1, p.dt);

    StepOutput out;
    out.commands.assign(n, StimCommand::none());
    std::vector<AgentState> next = prev;
    std::vector<Event> lost_events;
    std::vector<Event> snag_events;

    for (std::size_t i = 0; i < n; ++i) {
        const AgentState& self = prev[i];
        if (self.condition.is(ConditionKind::Entangled)) {
            next[i].speed = 0.0;
            next[i].stimulated = false;
            continue;
        }
        auto& rng = streams.agents[i];
        const Observation obs = observe(self.id, prev, terrain, p);

        MotionDecision decision;
        if (self.role == Role::Leader) {
            decision = leader_plan(obs, p);
        } else if (config.controller == ControllerKind::Tgi) {
            decision = tgi_plan(obs, p, config.selection, &rng.selection);
        } else {
            decision = boids_plan(obs, config.boids, p);
        }
        if (decision.lost && !world.lost[i]) lost_events.push_back({now, EventKind::Lost, self.id});
        world.lost[i] = decision.lost;

        const StimCommand cmd = tgi_track(decision, self.speed, p);
        out.commands[i] = cmd;

        AgentState moved = self;
        if (self.condition.is(ConditionKind::Snagged)) {
            // Pinned in place, but a steering pulse still turns the body.
            if (cmd.active()) {
                moved = stimulated_step(self, cmd, terrain, profiles[i], p, rng.motion, p.dt);
                moved.position = self.position;
                moved.speed = 0.0;
            }
            moved.stimulated = cmd.active();
        } else if (cmd.active()) {
            moved = stimulated_step(self, cmd, terrain, profiles[i], p, rng.motion, p.dt);
        } else {
            moved = free_motion_step(self, obs, terrain, profiles[i], p, config.insect, rng.motion,
                                     p.dt);
        }
        next[i] = snag_update(moved, cmd, terrain, p, config.insect, rng.snag, p.dt);
        if (!moved.condition.is(ConditionKind::Snagged) && next[i].condition.is(ConditionKind::Snagged))
            snag_events.push_back({now, EventKind::Snag, self.id});
        else if (moved.condition.is(ConditionKind::Snagged) && next[i].condition.is(ConditionKind::Normal))
            snag_events.push_back({now, EventKind::Escape, self.id});
    }

    auto& events = out.events;
    events.insert(events.end(), lost_events.begin(), lost_events.end());
    events.insert(events.end(), snag_events.begin(), snag_events.end());
    const auto released = release_entanglements(next, world.entangled, p, config.terrain, now);
    events.insert(events.end(), released.begin(), released.end());
    const auto caught = detect_entanglements(next, world.entangled, p, streams.entangle, now);
    events.insert(events.end(), caught.begin(), caught.end());

    for (std::size_t i = 0; i < n; ++i) {
        if (!world.reached[i] && terrain.goal.contains(next[i].position)) {
            world.reached[i] = true;
            events.push_back({now, EventKind::GoalReached, next[i].id});
        }
    }

    world.agents = std::move(next);
    world.step += 1;
    world.time = now;
    return out;
}

TrialLog run_trial(const SimConfig& config, std::uint64_t seed) {
    TrialLog log;
    log.config = config;
    log.config.params.seed = seed;
    log.seed = seed;
    log.leader_id = 0;

    const SimConfig& cfg = log.config;
    InitialWorld init = init_world(cfg, seed);
    WorldState& world = init.world;
    RandomStreams streams = RandomStreams::create(seed, cfg.n_agents);

    const double dt = cfg.params.dt;
    const long total_steps = static_cast<long>(std::ceil(cfg.params.t_max / dt - 1e-9));
    while (world.step < total_steps && !world.all_reached()) {
        StepOutput out = step(world, init.profiles, cfg, streams);
        StepRecord rec;
        rec.time = world.time;
        rec.agents.reserve(world.agents.size());
        for (std::size_t i = 0; i < world.agents.size(); ++i) {
            const AgentState& a = world.agents[i];
            rec.agents.push_back({a.id, a.position, a.heading, a.speed, out.commands[i],
                                  a.condition.kind});
        }
        log.steps.push_back(std::move(rec));
        log.events.insert(log.events.end(), out.events.begin(), out.events.end());
    }
    log.termination = world.all_reached() ? Termination::AllReached : Termination::Timeout;
    log.end_time = world.time;
    return log;
}

}  // namespace swarm
