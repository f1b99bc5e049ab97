#pragma once

#include <cstdint>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

enum class Role { Leader, Follower };

enum class ConditionKind { Normal, Entangled, Snagged };

struct Condition {
    ConditionKind kind = ConditionKind::Normal;
    double remaining = 0.0;  // seconds, Entangled only

    static Condition normal() { return {}; }
    static Condition entangled(double remaining_s) { return {ConditionKind::Entangled, remaining_s}; }
    static Condition snagged() { return {ConditionKind::Snagged, 0.0}; }

    bool is(ConditionKind k) const { return kind == k; }
    bool operator==(const Condition&) const = default;
};

/// Pose and status of one cyborg. Heading is in [-pi, pi), 0 along +x, CCW positive.
struct AgentState {
    int id = 0;
    Role role = Role::Follower;
    Vec2 position;
    double heading = 0.0;
    double speed = 0.0;
    bool stimulated = false;
    Condition condition;

    bool operator==(const AgentState&) const = default;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;

    bool contains(Vec2 p) const { return distance(p, center) <= radius; }
    bool operator==(const Circle&) const = default;
};

struct Hill {
    Vec2 center;
    double radius = 0.0;
    double speed_factor = 1.0;

    bool operator==(const Hill&) const = default;
};

struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool operator==(const Rect&) const = default;
};

/// Square field [0, side] x [0, side]. Never exposed to controllers.
struct Terrain {
    double side = 3.5;
    std::vector<Circle> obstacles;
    std::vector<Hill> hills;
    Circle goal;
    Rect start_zone;

    bool in_bounds(Vec2 p) const { return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side; }
    bool operator==(const Terrain&) const = default;
};

struct SimParams {
    double dt = 0.1;
    double t_max = 300.0;
    double sensing_range = 0.7;
    double free_range = 0.35;
    int neighbor_threshold = 3;  // M
    int num_sectors = 6;
    double theta_threshold_deg = 30.0;
    double v_threshold = 0.08;     // m/s
    double accel_gain = 5.0;       // V per meter of target range
    double steer_gain = 2.5;       // V per radian of bearing error
    double v_max = 2.5;            // V
    double entangle_distance = 0.06;
    double entangle_prob = 0.3;    // per step
    double entangle_duration = 5.0;
    double release_separation = 0.12;  // center distance a released pair is pushed out to
    double body_radius = 0.03;
    double avoid_distance = 0.12;
    std::uint64_t seed = 1;

    double theta_threshold() const { return deg_to_rad(theta_threshold_deg); }
    bool operator==(const SimParams&) const = default;
};

/// Population-level insect behavior. Per-individual profiles are sampled from this.
struct InsectParams {
    double free_speed = 0.06;           // m/s
    double turn_gain = 1.2;             // rad/s per V
    double accel_gain = 0.08;           // m/s^2 per V
    double heading_noise_sigma = 0.4;   // rad / sqrt(s)
    double sigma_log = 0.3;             // log-std of the per-individual gain multiplier
    double avoid_turn_gain = 8.0;       // rad/s at zero gap
    double speed_relax_time = 1.0;      // s
    double p_snag = 0.5;                // 1/s
    double p_escape_free = 0.02;        // 1/s
    double p_escape_stim = 0.2;         // 1/s

    bool operator==(const InsectParams&) const = default;
};

struct BoidsWeights {
    double w_sep = 0.1;
    double w_coh = 1.0;
    double w_ali = 0.3;

    bool operator==(const BoidsWeights&) const = default;
};

enum class ControllerKind { Tgi, Boids };

/// How the target cyborg is picked inside the winning sector.
enum class TargetSelection { Nearest, Random };

struct SimConfig {
    SimParams params;
    Terrain terrain;
    InsectParams insect;
    BoidsWeights boids;
    ControllerKind controller = ControllerKind::Tgi;
    TargetSelection selection = TargetSelection::Nearest;
    int n_agents = 20;

    bool operator==(const SimConfig&) const = default;
};

/// The "paper-field" layout: start strip at the bottom, goal near the top edge.
/// Obstacle and hill placement is representative, not measured.
Terrain paper_field_terrain();

/// All defaults, with the paper-field terrain.
SimConfig default_config();

}  // namespace swarm
