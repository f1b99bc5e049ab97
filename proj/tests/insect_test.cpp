#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "swarm/controllers.hpp"
#include "swarm/insect.hpp"
#include "swarm/perception.hpp"
#include "swarm/terrain.hpp"

using namespace swarm;

namespace {

InsectProfile quiet_profile() {
    InsectProfile p;
    p.heading_noise_sigma = 0.0;
    return p;
}

AgentState walker(Vec2 pos, double heading, double speed) {
    AgentState a;
    a.id = 0;
    a.position = pos;
    a.heading = heading;
    a.speed = speed;
    return a;
}

Terrain open_field() {
    Terrain t;
    t.side = 10.0;
    return t;
}

}  // namespace

TEST(SampleProfile, DegenerateVariability) {
    InsectParams base;
    base.sigma_log = 0.0;
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_profile(rng, base).gain_multiplier, 1.0);
}

TEST(SampleProfile, LogNormalMedianIsOne) {
    InsectParams base;
    base.sigma_log = 0.3;
    Rng rng(2);
    std::vector<double> g;
    for (int i = 0; i < 10000; ++i) g.push_back(sample_profile(rng, base).gain_multiplier);
    std::nth_element(g.begin(), g.begin() + 5000, g.end());
    EXPECT_NEAR(g[5000], 1.0, 0.05);
}

TEST(SampleProfile, BaselineFieldsAndDeterminism) {
    const InsectParams base;
    Rng a(9);
    Rng b(9);
    for (int i = 0; i < 100; ++i) {
        const InsectProfile pa = sample_profile(a, base);
        ASSERT_EQ(pa, sample_profile(b, base));
        EXPECT_EQ(pa.free_speed, 0.06);
        EXPECT_EQ(pa.turn_gain, 1.2);
        EXPECT_EQ(pa.accel_gain, 0.08);
        EXPECT_EQ(pa.heading_noise_sigma, 0.4);
        EXPECT_GT(pa.gain_multiplier, 0.0);
    }
}

TEST(FreeMotion, StraightLineWithoutNoise) {
    const SimParams p;
    const InsectParams in;
    const InsectProfile prof = quiet_profile();
    Rng rng(1);
    AgentState a = walker({1.0, 1.0}, 0.3, prof.free_speed);
    for (int k = 0; k < 50; ++k) {
        const AgentState next = free_motion_step(a, Observation{}, open_field(), prof, p, in, rng, p.dt);
        EXPECT_NEAR(next.heading, a.heading, 1e-15);
        EXPECT_DOUBLE_EQ(next.speed, prof.free_speed);
        EXPECT_NEAR(distance(next.position, a.position), prof.free_speed * p.dt, 1e-15);
        EXPECT_FALSE(next.stimulated);
        a = next;
    }
}

TEST(FreeMotion, HillsSlowTheWalk) {
    const SimParams p;
    const InsectParams in;
    const InsectProfile prof = quiet_profile();
    Terrain t = open_field();
    t.hills = {{{5.0, 5.0}, 2.0, 0.5}};
    Rng rng(1);
    AgentState a = walker({5.0, 5.0}, 0.0, 0.5 * prof.free_speed);
    const AgentState next = free_motion_step(a, Observation{}, t, prof, p, in, rng, p.dt);
    EXPECT_DOUBLE_EQ(next.speed, 0.5 * prof.free_speed);
}

TEST(FreeMotion, TurnsAwayFromNeighborAhead) {
    const SimParams p;
    const InsectParams in;
    const InsectProfile prof = quiet_profile();
    Rng rng(1);
    for (double bearing : {0.3, -0.3, 0.05, -1.2}) {
        Observation obs;
        obs.neighbors.push_back({0.08, bearing, false, 0.0});
        const AgentState a = walker({1.0, 1.0}, 0.0, prof.free_speed);
        const AgentState next = free_motion_step(a, obs, open_field(), prof, p, in, rng, p.dt);
        const double turn = wrap_angle(next.heading - a.heading);
        EXPECT_NE(turn, 0.0);
        EXPECT_LT(turn * bearing, 0.0) << "bearing " << bearing;
    }
}

TEST(FreeMotion, NoiseFreeWalkersNeverOverlapObstacles) {
    const SimParams p;
    const InsectParams in;
    const InsectProfile prof = quiet_profile();
    const Terrain t = paper_field_terrain();
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> pos(0.0, t.side);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    Rng rng(1);
    for (int run = 0; run < 40; ++run) {
        AgentState a = walker(resolve_contacts({pos(gen), pos(gen)}, t, p.body_radius), ang(gen),
                              prof.free_speed);
        for (int k = 0; k < 1000; ++k) {
            a = free_motion_step(a, Observation{}, t, prof, p, in, rng, p.dt);
            ASSERT_GE(oracle::nearest_surface(a.position, t.obstacles) - p.body_radius, -1e-9);
            ASSERT_TRUE(t.in_bounds(a.position));
        }
    }
}

TEST(StimulatedStep, SteerClosedForm) {
    const SimParams p;
    const InsectProfile prof = quiet_profile();
    Rng rng(1);
    const AgentState a = walker({1.0, 1.0}, 0.1, 0.05);
    const AgentState left = stimulated_step(a, {StimKind::SteerLeft, 1.5}, open_field(), prof, p, rng, p.dt);
    EXPECT_NEAR(left.heading, 0.1 + prof.turn_gain * 1.5 * p.dt, 1e-15);
    EXPECT_EQ(left.speed, a.speed);
    EXPECT_TRUE(left.stimulated);
    const AgentState right = stimulated_step(a, {StimKind::SteerRight, 1.5}, open_field(), prof, p, rng, p.dt);
    EXPECT_NEAR(right.heading, 0.1 - prof.turn_gain * 1.5 * p.dt, 1e-15);
}

TEST(StimulatedStep, GainMultipliersScaleResponse) {
    const SimParams p;
    InsectProfile weak = quiet_profile();
    weak.gain_multiplier = 0.5;
    InsectProfile strong = quiet_profile();
    strong.gain_multiplier = 2.0;
    Rng rng(1);
    const AgentState a = walker({1.0, 1.0}, 0.0, 0.05);
    const StimCommand cmd{StimKind::SteerLeft, 1.0};
    const double dw = stimulated_step(a, cmd, open_field(), weak, p, rng, p.dt).heading - a.heading;
    const double ds = stimulated_step(a, cmd, open_field(), strong, p, rng, p.dt).heading - a.heading;
    EXPECT_NEAR(ds / dw, 4.0, 1e-12);
}

TEST(StimulatedStep, AccelerationSaturates) {
    const SimParams p;
    const InsectProfile prof = quiet_profile();
    Rng rng(1);
    const AgentState capped = walker({1.0, 1.0}, 0.0, prof.max_speed());
    EXPECT_EQ(stimulated_step(capped, {StimKind::Accelerate, 2.5}, open_field(), prof, p, rng, p.dt).speed,
              prof.max_speed());
    const AgentState slow = walker({1.0, 1.0}, 0.0, 0.0);
    EXPECT_NEAR(stimulated_step(slow, {StimKind::Accelerate, 1.0}, open_field(), prof, p, rng, p.dt).speed,
                prof.accel_gain * 1.0 * p.dt, 1e-15);
}

TEST(StimulatedStep, RejectsVoltageOutsideRange) {
    const SimParams p;
    const InsectProfile prof;
    Rng rng(1);
    const AgentState a = walker({1.0, 1.0}, 0.0, 0.05);
    EXPECT_THROW(stimulated_step(a, {StimKind::SteerLeft, 2.6}, open_field(), prof, p, rng, p.dt),
                 std::invalid_argument);
    EXPECT_THROW(stimulated_step(a, {StimKind::Accelerate, 0.0}, open_field(), prof, p, rng, p.dt),
                 std::invalid_argument);
    EXPECT_THROW(stimulated_step(a, StimCommand::none(), open_field(), prof, p, rng, p.dt),
                 std::invalid_argument);
}

TEST(StimulatedStep, ObstaclesStillBlock) {
    const SimParams p;
    const InsectProfile prof = quiet_profile();
    Terrain t = open_field();
    t.obstacles = {{{2.0, 1.0}, 0.2}};
    Rng rng(1);
    AgentState a = walker({1.5, 1.0}, 0.0, prof.max_speed());
    for (int k = 0; k < 200; ++k) {
        a = stimulated_step(a, {StimKind::Accelerate, 2.5}, t, prof, p, rng, p.dt);
        ASSERT_GE(oracle::nearest_surface(a.position, t.obstacles) - p.body_radius, -1e-9);
    }
}

// Two noise-free insects heading at each other. Left alone they veer apart; driven toward
// each other every step they close to entanglement range.
TEST(Suppression, FreeInsectsSeparateStimulatedOnesDoNot) {
    SimParams p;
    const InsectParams in;
    const InsectProfile prof = quiet_profile();
    const Terrain t = open_field();
    Rng rng(1);
    auto initial = [] {
        std::vector<AgentState> s(2);
        s[0] = walker({1.0, 1.0}, 0.0, 0.06);
        s[1] = walker({1.2, 1.0}, -kPi, 0.06);
        s[1].id = 1;
        return s;
    };

    // Head-on approach from 20 cm: the free pair turns away, the driven pair closes in.
    auto free_pair = initial();
    double free_closest = 1.0;
    for (int k = 0; k < 40; ++k) {
        auto next = free_pair;
        for (int i = 0; i < 2; ++i)
            next[i] = free_motion_step(free_pair[i], observe(i, free_pair, t, p), t, prof, p, in, rng, p.dt);
        free_pair = next;
        free_closest = std::min(free_closest, distance(free_pair[0].position, free_pair[1].position));
    }
    EXPECT_GT(free_closest, p.entangle_distance);

    auto driven = initial();
    double driven_closest = 1.0;
    for (int k = 0; k < 40; ++k) {
        auto next = driven;
        for (int i = 0; i < 2; ++i) {
            const auto& n = observe(i, driven, t, p).neighbors.at(0);
            const StimCommand cmd = tgi_track(MotionDecision::move_toward(n.bearing, n.range, false),
                                              driven[i].speed, p);
            next[i] = cmd.active() ? stimulated_step(driven[i], cmd, t, prof, p, rng, p.dt)
                                   : free_motion_step(driven[i], observe(i, driven, t, p), t, prof, p,
                                                      in, rng, p.dt);
        }
        driven = next;
        driven_closest = std::min(driven_closest, distance(driven[0].position, driven[1].position));
    }
    EXPECT_LT(driven_closest, p.entangle_distance);
}

TEST(InsectInvariants, SpeedStaysInRange) {
    const SimParams p;
    const InsectParams in;
    const Terrain t = paper_field_terrain();
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Rng rng(3);
    Rng prof_rng(4);
    for (int run = 0; run < 20; ++run) {
        const InsectProfile prof = sample_profile(prof_rng, in);
        AgentState a = walker({1.75, 0.5}, 1.0, 0.0);
        for (int k = 0; k < 500; ++k) {
            const double r = u(gen);
            if (r < 0.5) {
                a = free_motion_step(a, Observation{}, t, prof, p, in, rng, p.dt);
            } else {
                const StimKind kind = r < 0.65 ? StimKind::SteerLeft
                                    : r < 0.8  ? StimKind::SteerRight
                                               : StimKind::Accelerate;
                a = stimulated_step(a, {kind, 0.01 + 2.49 * u(gen)}, t, prof, p, rng, p.dt);
            }
            ASSERT_GE(a.speed, 0.0);
            ASSERT_LE(a.speed, prof.max_speed());
            ASSERT_GE(a.heading, -kPi);
            ASSERT_LT(a.heading, kPi);
        }
    }
}

TEST(InsectInvariants, NoiseFreeStepsArePure) {
    const SimParams p;
    InsectParams in;
    in.sigma_log = 0.0;
    const InsectProfile prof = quiet_profile();
    const Terrain t = paper_field_terrain();
    Observation obs;
    obs.neighbors.push_back({0.1, 0.2, false, 0.0});
    const AgentState a = walker({1.0, 0.5}, 0.4, 0.05);
    Rng r1(1);
    Rng r2(999);
    EXPECT_EQ(free_motion_step(a, obs, t, prof, p, in, r1, p.dt), free_motion_step(a, obs, t, prof, p, in, r2, p.dt));
    const StimCommand cmd{StimKind::Accelerate, 1.0};
    EXPECT_EQ(stimulated_step(a, cmd, t, prof, p, r1, p.dt), stimulated_step(a, cmd, t, prof, p, r2, p.dt));
}

TEST(Snag, NeverFarFromObstacles) {
    const SimParams p;
    InsectParams in;
    in.p_snag = 100.0;
    const Terrain t = paper_field_terrain();
    Rng rng(1);
    const AgentState a = walker({3.2, 0.3}, 0.0, 0.06);
    for (int k = 0; k < 1000; ++k)
        ASSERT_TRUE(snag_update(a, StimCommand::none(), t, p, in, rng, 1.0).condition.is(ConditionKind::Normal));
}

TEST(Snag, GrabsAgentPressingAgainstEdge) {
    const SimParams p;
    InsectParams in;
    in.p_snag = 100.0;
    Terrain t = open_field();
    t.obstacles = {{{2.0, 1.0}, 0.2}};
    Rng rng(1);
    const AgentState pressing = walker({2.0 - 0.2 - p.body_radius, 1.0}, 0.0, 0.06);
    const AgentState snagged = snag_update(pressing, StimCommand::none(), t, p, in, rng, p.dt);
    EXPECT_TRUE(snagged.condition.is(ConditionKind::Snagged));
    EXPECT_EQ(snagged.speed, 0.0);
    const AgentState leaving = walker({2.0 - 0.2 - p.body_radius, 1.0}, kPi, 0.06);
    EXPECT_TRUE(snag_update(leaving, StimCommand::none(), t, p, in, rng, p.dt).condition.is(ConditionKind::Normal));
}

TEST(Snag, CertainEscapeUnderStimulation) {
    const SimParams p;
    InsectParams in;
    in.p_escape_stim = 1.0;
    Terrain t = open_field();
    t.obstacles = {{{2.0, 1.0}, 0.2}};
    Rng rng(1);
    AgentState a = walker({2.0 - 0.2 - p.body_radius, 1.0}, 0.0, 0.0);
    a.condition = Condition::snagged();
    const AgentState out = snag_update(a, {StimKind::Accelerate, 1.0}, t, p, in, rng, 1.0);
    EXPECT_TRUE(out.condition.is(ConditionKind::Normal));
    EXPECT_NEAR(distance(out.position, a.position), p.body_radius, 1e-12);
    EXPECT_LT(out.position.x, a.position.x);
}

TEST(Snag, StimulationShortensEscapeTenfold) {
    const SimParams p;
    const InsectParams in;
    Terrain t = open_field();
    t.obstacles = {{{2.0, 1.0}, 0.2}};
    AgentState start = walker({2.0 - 0.2 - p.body_radius, 1.0}, 0.0, 0.0);
    start.condition = Condition::snagged();
    Rng rng(77);
    auto mean_escape = [&](const StimCommand& cmd) {
        double total = 0.0;
        for (int run = 0; run < 1000; ++run) {
            AgentState a = start;
            long steps = 0;
            while (a.condition.is(ConditionKind::Snagged)) {
                a = snag_update(a, cmd, t, p, in, rng, p.dt);
                ++steps;
            }
            total += static_cast<double>(steps) * p.dt;
        }
        return total / 1000.0;
    };
    const double stim = mean_escape({StimKind::Accelerate, 2.0});
    const double free = mean_escape(StimCommand::none());
    // Geometric waiting times: means 1/(p*dt) steps, so the ratio is 0.2/0.02.
    EXPECT_NEAR(free / stim, 10.0, 2.0);
}
