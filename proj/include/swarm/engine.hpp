#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarm/command.hpp"
#include "swarm/insect.hpp"
#include "swarm/rng.hpp"
#include "swarm/world.hpp"

namespace swarm {

enum class EventKind { Entangle, Release, Snag, Escape, GoalReached, Lost };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::Lost;
    int a = -1;
    int b = -1;  // second agent for Entangle/Release, -1 otherwise

    bool operator==(const Event&) const = default;
};

/// Two agents locked together; both are immobile until remaining_steps reaches 0.
struct EntangledPair {
    int a = -1;
    int b = -1;
    long remaining_steps = 0;

    bool operator==(const EntangledPair&) const = default;
};

/// Agents are stored so that agents[i].id == i; agent 0 is the leader.
struct WorldState {
    long step = 0;
    double time = 0.0;
    std::vector<AgentState> agents;
    std::vector<EntangledPair> entangled;
    std::vector<bool> reached;  // GoalReached already emitted
    std::vector<bool> lost;     // saw no one on the previous step

    bool all_reached() const;
};

/// One generator per (agent, purpose) plus a world-level one for pair resolution.
struct RandomStreams {
    struct PerAgent {
        Rng motion;
        Rng snag;
        Rng selection;
    };
    std::vector<PerAgent> agents;
    Rng entangle;

    static RandomStreams create(std::uint64_t seed, int n_agents);
};

struct InitialWorld {
    WorldState world;
    std::vector<InsectProfile> profiles;
};

/// Places n agents without body overlap inside the start zone, uniform random headings.
/// Throws std::runtime_error if the zone cannot hold them.
InitialWorld init_world(const SimConfig& config, std::uint64_t seed);

struct StepOutput {
    std::vector<StimCommand> commands;  // indexed by agent id, exactly as applied
    std::vector<Event> events;
};

/// Advances the world by one dt. Every agent plans from the pre-step state.
StepOutput step(WorldState& world, std::span<const InsectProfile> profiles,
                const SimConfig& config, RandomStreams& streams);

/// Entangles eligible Normal pairs: closer than d_ent with at least one member stimulated
/// this step, each with probability p_ent. Pairs are visited in (i, j) order, i < j.
std::vector<Event> detect_entanglements(std::vector<AgentState>& agents,
                                        std::vector<EntangledPair>& pairs,
                                        const SimParams& params, Rng& rng, double time);

/// Counts down existing pairs and releases the expired ones. A released pair closer than
/// release_separation is pushed apart symmetrically along its center line.
std::vector<Event> release_entanglements(std::vector<AgentState>& agents,
                                         std::vector<EntangledPair>& pairs,
                                         const SimParams& params, const Terrain& terrain,
                                         double time);

struct AgentRecord {
    int id = 0;
    Vec2 position;
    double heading = 0.0;
    double speed = 0.0;
    StimCommand command;
    ConditionKind condition = ConditionKind::Normal;

    bool operator==(const AgentRecord&) const = default;
};

struct StepRecord {
    double time = 0.0;  // end of the step
    std::vector<AgentRecord> agents;

    bool operator==(const StepRecord&) const = default;
};

enum class Termination { AllReached, Timeout };

struct TrialLog {
    SimConfig config;  // snapshot; config.params.seed is the trial seed
    std::uint64_t seed = 0;
    int leader_id = 0;
    std::vector<StepRecord> steps;
    std::vector<Event> events;
    Termination termination = Termination::Timeout;
    double end_time = 0.0;

    int n_agents() const { return config.n_agents; }
};

/// Runs until every agent has reached the goal or t_max elapses.
TrialLog run_trial(const SimConfig& config, std::uint64_t seed);

/// Simulation time after `steps` steps, rounded to the nanosecond so logs stay readable.
double step_time(long steps, double dt);

}  // namespace swarm
