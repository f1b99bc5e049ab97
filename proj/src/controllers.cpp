#include "swarm/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace swarm {

int sector_of(double bearing, int sectors) {
    double a = wrap_angle(bearing);
    if (a < 0.0) a += kTwoPi;
    const int k = static_cast<int>(std::floor(a / (kTwoPi / sectors)));
    return std::clamp(k, 0, sectors - 1);
}

MotionDecision tgi_plan(const Observation& obs, const SimParams& params, TargetSelection selection,
                        Rng* selection_rng) {
    if (obs.goal) throw std::invalid_argument("tgi_plan: follower observation carries goal fields");

    const auto& neighbors = obs.neighbors;
    const auto in_free_range = std::count_if(neighbors.begin(), neighbors.end(), [&](const auto& n) {
        return n.range <= params.free_range;
    });
    if (in_free_range >= params.neighbor_threshold) return MotionDecision::free_motion();

    // Neighbors are sorted by range, so the first leader hit is the only one.
    for (const auto& n : neighbors) {
        if (n.is_leader) return MotionDecision::move_toward(n.bearing, n.range, true);
    }
    if (neighbors.empty()) return MotionDecision::free_motion(/*lost=*/true);

    const int sectors = params.num_sectors;
    std::vector<int> count(sectors, 0);
    std::vector<double> nearest(sectors, std::numeric_limits<double>::infinity());
    for (const auto& n : neighbors) {
        const int s = sector_of(n.bearing, sectors);
        ++count[s];
        nearest[s] = std::min(nearest[s], n.range);
    }
    int target = 0;
    for (int s = 1; s < sectors; ++s) {
        if (count[s] > count[target] || (count[s] == count[target] && nearest[s] < nearest[target]))
            target = s;
    }

    std::vector<const NeighborObs*> members;
    for (const auto& n : neighbors) {
        if (sector_of(n.bearing, sectors) == target) members.push_back(&n);
    }
    std::size_t pick = 0;  // members inherit the range ordering: 0 is the nearest
    if (selection == TargetSelection::Random) {
        if (!selection_rng) throw std::invalid_argument("tgi_plan: random selection needs an rng");
        pick = std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(*selection_rng);
    }
    return MotionDecision::move_toward(members[pick]->bearing, members[pick]->range, false);
}

StimCommand tgi_track(const MotionDecision& decision, double self_speed, const SimParams& params) {
    if (decision.kind == DecisionKind::FreeMotion) return StimCommand::none();

    const double theta = decision.target_bearing;
    if (std::abs(theta) >= params.theta_threshold()) {
        const double v = std::min(params.steer_gain * std::abs(theta), params.v_max);
        if (v <= 0.0) return StimCommand::none();
        return {theta > 0.0 ? StimKind::SteerLeft : StimKind::SteerRight, v};
    }
    if (self_speed <= params.v_threshold) {
        const double v = std::min(params.accel_gain * decision.target_range, params.v_max);
        if (v <= 0.0) return StimCommand::none();
        return {StimKind::Accelerate, v};
    }
    return StimCommand::none();
}

MotionDecision boids_plan(const Observation& obs, const BoidsWeights& weights,
                          const SimParams& params) {
    if (obs.neighbors.empty()) return MotionDecision::free_motion(/*lost=*/true);

    Vec2 separation;
    Vec2 centroid;
    double weight_sum = 0.0;
    Vec2 heading_sum;
    for (const auto& n : obs.neighbors) {
        const Vec2 toward = unit_from_angle(n.bearing);
        if (n.range < 2.0 * params.avoid_distance) separation -= toward / n.range;
        const double w = n.is_leader ? 3.0 : 1.0;
        centroid += toward * (n.range * w);
        weight_sum += w;
        heading_sum += unit_from_angle(n.relative_heading);
    }
    centroid = centroid / weight_sum;

    const double centroid_dist = centroid.norm();
    const Vec2 cohesion = centroid_dist > 0.0 ? centroid / centroid_dist : Vec2{};
    const double heading_len = heading_sum.norm();
    const Vec2 alignment = heading_len > 0.0 ? heading_sum / heading_len : Vec2{};

    const Vec2 resultant =
        separation * weights.w_sep + cohesion * weights.w_coh + alignment * weights.w_ali;
    if (resultant.norm() < 1e-6) return MotionDecision::free_motion();
    return MotionDecision::move_toward(wrap_angle(resultant.angle()),
                                       std::min(centroid_dist, params.sensing_range), false);
}

MotionDecision leader_plan(const Observation& obs, const SimParams& params) {
    if (!obs.goal) throw std::invalid_argument("leader_plan: observation has no goal fields");
    const GoalObs& g = *obs.goal;
    if (g.range <= g.radius) return MotionDecision::free_motion();
    return MotionDecision::move_toward(g.bearing, std::min(g.range, params.sensing_range), false);
}

}  // namespace swarm
