#include "swarm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "swarm/command.hpp"

namespace swarm {

using nlohmann::json;

Terrain paper_field_terrain() {
    Terrain t;
    t.side = 3.5;
    t.obstacles = {
        {{1.20, 1.45}, 0.20},
        {{2.35, 1.60}, 0.25},
        {{1.25, 2.30}, 0.15},
        {{0.70, 2.05}, 0.18},
    };
    t.hills = {
        {{0.95, 1.00}, 0.40, 0.5},
        {{2.55, 2.40}, 0.40, 0.5},
    };
    t.goal = {{1.75, 3.00}, 0.40};
    t.start_zone = {1.00, 2.50, 0.10, 0.60};
    return t;
}

SimConfig default_config() {
    SimConfig c;
    c.terrain = paper_field_terrain();
    return c;
}

std::string_view to_string(StimKind kind) {
    switch (kind) {
        case StimKind::None: return "none";
        case StimKind::SteerLeft: return "steer_left";
        case StimKind::SteerRight: return "steer_right";
        case StimKind::Accelerate: return "accelerate";
    }
    return "none";
}

std::string_view to_string(ControllerKind kind) {
    return kind == ControllerKind::Tgi ? "tgi" : "boids";
}

std::optional<ControllerKind> parse_controller(std::string_view name) {
    if (name == "tgi") return ControllerKind::Tgi;
    if (name == "boids") return ControllerKind::Boids;
    return std::nullopt;
}

namespace {

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Walks the raw tree, filling a target struct and recording every problem found.
class TreeReader {
public:
    explicit TreeReader(std::vector<Violation>& out) : out_(out) {}

    void fail(std::string field, std::string message) {
        out_.push_back({std::move(field), std::move(message)});
    }

    // nullptr if absent or not an object (the latter is reported).
    const json* section(const json& parent, std::string_view key, const std::string& path) {
        auto it = parent.find(std::string(key));
        if (it == parent.end()) return nullptr;
        if (!it->is_object()) {
            fail(join(path, key), "must be an object");
            return nullptr;
        }
        return &*it;
    }

    void allow_only(const json& obj, std::initializer_list<std::string_view> keys,
                    const std::string& path) {
        for (const auto& [k, v] : obj.items()) {
            bool known = false;
            for (auto allowed : keys) known = known || k == allowed;
            if (!known) fail(join(path, k), "unknown key");
        }
    }

    void read(const json* obj, std::string_view key, const std::string& path, double& target,
              bool required = false) {
        const json* v = lookup(obj, key, path, required);
        if (!v) return;
        if (!v->is_number()) return fail(join(path, key), "must be a number");
        target = v->get<double>();
        if (!std::isfinite(target)) fail(join(path, key), "must be finite");
    }

    void read(const json* obj, std::string_view key, const std::string& path, int& target) {
        const json* v = lookup(obj, key, path, false);
        if (!v) return;
        if (!v->is_number_integer()) return fail(join(path, key), "must be an integer");
        target = v->get<int>();
    }

    void read(const json* obj, std::string_view key, const std::string& path,
              std::uint64_t& target) {
        const json* v = lookup(obj, key, path, false);
        if (!v) return;
        if (!v->is_number_unsigned()) return fail(join(path, key), "must be a non-negative integer");
        target = v->get<std::uint64_t>();
    }

    void read(const json* obj, std::string_view key, const std::string& path, std::string& target) {
        const json* v = lookup(obj, key, path, false);
        if (!v) return;
        if (!v->is_string()) return fail(join(path, key), "must be a string");
        target = v->get<std::string>();
    }

private:
    const json* lookup(const json* obj, std::string_view key, const std::string& path,
                       bool required) {
        if (obj) {
            auto it = obj->find(std::string(key));
            if (it != obj->end()) return &*it;
        }
        if (required) fail(join(path, key), "missing required key");
        return nullptr;
    }

    std::vector<Violation>& out_;
};

bool circle_touches_square(Vec2 c, double r, double side) {
    const Vec2 nearest{std::clamp(c.x, 0.0, side), std::clamp(c.y, 0.0, side)};
    return distance(c, nearest) <= r;
}

void read_terrain(TreeReader& rd, const json& root, Terrain& t) {
    const json* node = rd.section(root, "terrain", "");
    if (!node) return;
    rd.allow_only(*node, {"side", "obstacles", "hills", "goal", "start_zone"}, "terrain");
    rd.read(node, "side", "terrain", t.side);

    if (auto it = node->find("obstacles"); it != node->end()) {
        if (!it->is_array()) {
            rd.fail("terrain.obstacles", "must be an array");
        } else {
            t.obstacles.clear();
            for (std::size_t i = 0; i < it->size(); ++i) {
                const std::string path = "terrain.obstacles[" + std::to_string(i) + "]";
                const json& e = (*it)[i];
                if (!e.is_object()) {
                    rd.fail(path, "must be an object");
                    continue;
                }
                rd.allow_only(e, {"x", "y", "r"}, path);
                Circle c;
                rd.read(&e, "x", path, c.center.x, true);
                rd.read(&e, "y", path, c.center.y, true);
                rd.read(&e, "r", path, c.radius, true);
                t.obstacles.push_back(c);
            }
        }
    }
    if (auto it = node->find("hills"); it != node->end()) {
        if (!it->is_array()) {
            rd.fail("terrain.hills", "must be an array");
        } else {
            t.hills.clear();
            for (std::size_t i = 0; i < it->size(); ++i) {
                const std::string path = "terrain.hills[" + std::to_string(i) + "]";
                const json& e = (*it)[i];
                if (!e.is_object()) {
                    rd.fail(path, "must be an object");
                    continue;
                }
                rd.allow_only(e, {"x", "y", "r", "factor"}, path);
                Hill h;
                rd.read(&e, "x", path, h.center.x, true);
                rd.read(&e, "y", path, h.center.y, true);
                rd.read(&e, "r", path, h.radius, true);
                rd.read(&e, "factor", path, h.speed_factor, true);
                t.hills.push_back(h);
            }
        }
    }
    if (const json* goal = rd.section(*node, "goal", "terrain")) {
        rd.allow_only(*goal, {"x", "y", "r"}, "terrain.goal");
        rd.read(goal, "x", "terrain.goal", t.goal.center.x, true);
        rd.read(goal, "y", "terrain.goal", t.goal.center.y, true);
        rd.read(goal, "r", "terrain.goal", t.goal.radius, true);
    }
    if (const json* zone = rd.section(*node, "start_zone", "terrain")) {
        rd.allow_only(*zone, {"x_min", "x_max", "y_min", "y_max"}, "terrain.start_zone");
        rd.read(zone, "x_min", "terrain.start_zone", t.start_zone.x_min, true);
        rd.read(zone, "x_max", "terrain.start_zone", t.start_zone.x_max, true);
        rd.read(zone, "y_min", "terrain.start_zone", t.start_zone.y_min, true);
        rd.read(zone, "y_max", "terrain.start_zone", t.start_zone.y_max, true);
    }
}

void check_invariants(TreeReader& rd, const SimConfig& c) {
    const SimParams& p = c.params;
    auto require = [&](bool ok, const char* field, const char* message) {
        if (!ok) rd.fail(field, message);
    };

    require(p.dt > 0.0 && p.dt <= 0.5, "sim.dt", "must satisfy 0 < dt <= 0.5");
    require(p.t_max >= 0.0, "sim.t_max", "must be >= 0");
    require(c.n_agents >= 2, "sim.n_agents", "must be >= 2 (one leader and at least one follower)");
    require(p.free_range > 0.0, "sensing.free_range", "must be > 0");
    require(p.free_range < p.sensing_range, "sensing.free_range",
            "must satisfy R_f < R_s (free_range < sensing_range)");
    require(p.neighbor_threshold >= 1, "tgi.M", "must satisfy M >= 1");
    require(p.num_sectors >= 2, "tgi.sectors", "must satisfy S >= 2");
    require(p.theta_threshold_deg >= 0.0 && p.theta_threshold_deg <= 180.0,
            "tgi.theta_threshold_deg", "must lie in [0, 180]");
    require(p.v_threshold >= 0.0, "tgi.v_threshold", "must be >= 0");
    require(p.accel_gain >= 0.0, "tgi.k_a", "gain must be >= 0");
    require(p.steer_gain >= 0.0, "tgi.k_s", "gain must be >= 0");
    require(p.v_max > 0.0, "stimulation.v_max", "must be > 0");
    require(p.entangle_distance > 0.0, "entanglement.distance", "must satisfy d_ent > 0");
    require(p.entangle_prob >= 0.0 && p.entangle_prob <= 1.0, "entanglement.probability",
            "must lie in [0, 1]");
    require(p.entangle_duration > 0.0, "entanglement.duration", "must be > 0");
    require(p.release_separation >= 0.0, "entanglement.release_separation", "must be >= 0");
    require(p.body_radius > 0.0, "body.radius", "must be > 0");
    require(p.avoid_distance > 0.0, "body.avoid_distance", "must be > 0");

    const BoidsWeights& b = c.boids;
    require(b.w_sep >= 0.0 && b.w_coh >= 0.0 && b.w_ali >= 0.0, "boids", "weights must be >= 0");

    const InsectParams& in = c.insect;
    require(in.free_speed > 0.0, "insect.free_speed", "must be > 0");
    require(in.turn_gain > 0.0, "insect.turn_gain", "must be > 0");
    require(in.accel_gain > 0.0, "insect.accel_gain", "must be > 0");
    require(in.heading_noise_sigma >= 0.0, "insect.heading_noise_sigma", "must be >= 0");
    require(in.sigma_log >= 0.0, "insect.sigma_log", "must be >= 0");
    require(in.avoid_turn_gain >= 0.0, "insect.avoid_turn_gain", "must be >= 0");
    require(in.speed_relax_time > 0.0, "insect.speed_relax_time", "must be > 0");
    require(in.p_snag >= 0.0, "insect.p_snag", "must be >= 0");
    require(in.p_escape_free >= 0.0, "insect.p_escape_free", "must be >= 0");
    require(in.p_escape_stim >= 0.0, "insect.p_escape_stim", "must be >= 0");

    const Terrain& t = c.terrain;
    if (!(t.side > 0.0)) {
        rd.fail("terrain.side", "must be > 0");
        return;  // remaining geometry checks are meaningless
    }
    for (std::size_t i = 0; i < t.obstacles.size(); ++i) {
        const auto& o = t.obstacles[i];
        const std::string path = "terrain.obstacles[" + std::to_string(i) + "]";
        if (!(o.radius > 0.0)) rd.fail(path + ".r", "must be > 0");
        else if (!circle_touches_square(o.center, o.radius, t.side))
            rd.fail(path, "circle must intersect the field bounds");
    }
    for (std::size_t i = 0; i < t.hills.size(); ++i) {
        const auto& h = t.hills[i];
        const std::string path = "terrain.hills[" + std::to_string(i) + "]";
        if (!(h.radius > 0.0)) rd.fail(path + ".r", "must be > 0");
        else if (!circle_touches_square(h.center, h.radius, t.side))
            rd.fail(path, "circle must intersect the field bounds");
        if (!(h.speed_factor > 0.0 && h.speed_factor <= 1.0))
            rd.fail(path + ".factor", "speed factor must lie in (0, 1]");
    }
    const Circle& g = t.goal;
    if (!(g.radius > 0.0)) {
        rd.fail("terrain.goal.r", "must be > 0");
    } else if (g.center.x - g.radius < 0.0 || g.center.x + g.radius > t.side ||
               g.center.y - g.radius < 0.0 || g.center.y + g.radius > t.side) {
        rd.fail("terrain.goal", "goal circle must lie within the field bounds");
    }
    for (std::size_t i = 0; i < t.obstacles.size(); ++i) {
        if (distance(g.center, t.obstacles[i].center) < t.obstacles[i].radius)
            rd.fail("terrain.goal", "goal center lies inside obstacle " + std::to_string(i));
    }
    const Rect& z = t.start_zone;
    if (!(z.x_min < z.x_max && z.y_min < z.y_max))
        rd.fail("terrain.start_zone", "must satisfy x_min < x_max and y_min < y_max");
    else if (z.x_min < 0.0 || z.y_min < 0.0 || z.x_max > t.side || z.y_max > t.side)
        rd.fail("terrain.start_zone", "must lie within the field bounds");
}

}  // namespace

ValidationResult validate_config(const json& raw) {
    ValidationResult result;
    if (!raw.is_object()) {
        result.violations.push_back({"<config>", "top level must be an object"});
        return result;
    }

    TreeReader rd(result.violations);
    SimConfig c = default_config();
    SimParams& p = c.params;

    rd.allow_only(raw,
                  {"controller", "sim", "sensing", "tgi", "boids", "stimulation", "entanglement",
                   "body", "insect", "terrain"},
                  "");

    std::string controller(to_string(c.controller));
    rd.read(&raw, "controller", "", controller);
    if (auto k = parse_controller(controller)) c.controller = *k;
    else rd.fail("controller", "must be \"tgi\" or \"boids\"");

    if (const json* s = rd.section(raw, "sim", "")) {
        rd.allow_only(*s, {"dt", "t_max", "seed", "n_agents"}, "sim");
        rd.read(s, "dt", "sim", p.dt);
        rd.read(s, "t_max", "sim", p.t_max);
        rd.read(s, "seed", "sim", p.seed);
        rd.read(s, "n_agents", "sim", c.n_agents);
    }
    if (const json* s = rd.section(raw, "sensing", "")) {
        rd.allow_only(*s, {"sensing_range", "free_range"}, "sensing");
        rd.read(s, "sensing_range", "sensing", p.sensing_range);
        rd.read(s, "free_range", "sensing", p.free_range);
    }
    if (const json* s = rd.section(raw, "tgi", "")) {
        rd.allow_only(*s,
                      {"M", "sectors", "theta_threshold_deg", "v_threshold", "k_a", "k_s",
                       "target_selection"},
                      "tgi");
        rd.read(s, "M", "tgi", p.neighbor_threshold);
        rd.read(s, "sectors", "tgi", p.num_sectors);
        rd.read(s, "theta_threshold_deg", "tgi", p.theta_threshold_deg);
        rd.read(s, "v_threshold", "tgi", p.v_threshold);
        rd.read(s, "k_a", "tgi", p.accel_gain);
        rd.read(s, "k_s", "tgi", p.steer_gain);
        std::string selection = "nearest";
        rd.read(s, "target_selection", "tgi", selection);
        if (selection == "nearest") c.selection = TargetSelection::Nearest;
        else if (selection == "random") c.selection = TargetSelection::Random;
        else rd.fail("tgi.target_selection", "must be \"nearest\" or \"random\"");
    }
    if (const json* s = rd.section(raw, "boids", "")) {
        rd.allow_only(*s, {"w_sep", "w_coh", "w_ali"}, "boids");
        rd.read(s, "w_sep", "boids", c.boids.w_sep);
        rd.read(s, "w_coh", "boids", c.boids.w_coh);
        rd.read(s, "w_ali", "boids", c.boids.w_ali);
    }
    if (const json* s = rd.section(raw, "stimulation", "")) {
        rd.allow_only(*s, {"v_max"}, "stimulation");
        rd.read(s, "v_max", "stimulation", p.v_max);
    }
    if (const json* s = rd.section(raw, "entanglement", "")) {
        rd.allow_only(*s, {"distance", "probability", "duration", "release_separation"},
                       "entanglement");
        rd.read(s, "distance", "entanglement", p.entangle_distance);
        rd.read(s, "probability", "entanglement", p.entangle_prob);
        rd.read(s, "duration", "entanglement", p.entangle_duration);
        rd.read(s, "release_separation", "entanglement", p.release_separation);
    }
    if (const json* s = rd.section(raw, "body", "")) {
        rd.allow_only(*s, {"radius", "avoid_distance"}, "body");
        rd.read(s, "radius", "body", p.body_radius);
        rd.read(s, "avoid_distance", "body", p.avoid_distance);
    }
    if (const json* s = rd.section(raw, "insect", "")) {
        InsectParams& in = c.insect;
        rd.allow_only(*s,
                      {"free_speed", "turn_gain", "accel_gain", "heading_noise_sigma", "sigma_log",
                       "avoid_turn_gain", "speed_relax_time", "p_snag", "p_escape_free",
                       "p_escape_stim"},
                      "insect");
        rd.read(s, "free_speed", "insect", in.free_speed);
        rd.read(s, "turn_gain", "insect", in.turn_gain);
        rd.read(s, "accel_gain", "insect", in.accel_gain);
        rd.read(s, "heading_noise_sigma", "insect", in.heading_noise_sigma);
        rd.read(s, "sigma_log", "insect", in.sigma_log);
        rd.read(s, "avoid_turn_gain", "insect", in.avoid_turn_gain);
        rd.read(s, "speed_relax_time", "insect", in.speed_relax_time);
        rd.read(s, "p_snag", "insect", in.p_snag);
        rd.read(s, "p_escape_free", "insect", in.p_escape_free);
        rd.read(s, "p_escape_stim", "insect", in.p_escape_stim);
    }
    read_terrain(rd, raw, c.terrain);

    check_invariants(rd, c);
    if (result.violations.empty()) result.config = c;
    return result;
}

json config_to_json(const SimConfig& c) {
    const SimParams& p = c.params;
    json obstacles = json::array();
    for (const auto& o : c.terrain.obstacles)
        obstacles.push_back({{"x", o.center.x}, {"y", o.center.y}, {"r", o.radius}});
    json hills = json::array();
    for (const auto& h : c.terrain.hills)
        hills.push_back(
            {{"x", h.center.x}, {"y", h.center.y}, {"r", h.radius}, {"factor", h.speed_factor}});
    const Rect& z = c.terrain.start_zone;

    return {
        {"controller", to_string(c.controller)},
        {"sim", {{"dt", p.dt}, {"t_max", p.t_max}, {"seed", p.seed}, {"n_agents", c.n_agents}}},
        {"sensing", {{"sensing_range", p.sensing_range}, {"free_range", p.free_range}}},
        {"tgi",
         {{"M", p.neighbor_threshold},
          {"sectors", p.num_sectors},
          {"theta_threshold_deg", p.theta_threshold_deg},
          {"v_threshold", p.v_threshold},
          {"k_a", p.accel_gain},
          {"k_s", p.steer_gain},
          {"target_selection", c.selection == TargetSelection::Nearest ? "nearest" : "random"}}},
        {"boids", {{"w_sep", c.boids.w_sep}, {"w_coh", c.boids.w_coh}, {"w_ali", c.boids.w_ali}}},
        {"stimulation", {{"v_max", p.v_max}}},
        {"entanglement",
         {{"distance", p.entangle_distance},
          {"probability", p.entangle_prob},
          {"duration", p.entangle_duration},
          {"release_separation", p.release_separation}}},
        {"body", {{"radius", p.body_radius}, {"avoid_distance", p.avoid_distance}}},
        {"insect",
         {{"free_speed", c.insect.free_speed},
          {"turn_gain", c.insect.turn_gain},
          {"accel_gain", c.insect.accel_gain},
          {"heading_noise_sigma", c.insect.heading_noise_sigma},
          {"sigma_log", c.insect.sigma_log},
          {"avoid_turn_gain", c.insect.avoid_turn_gain},
          {"speed_relax_time", c.insect.speed_relax_time},
          {"p_snag", c.insect.p_snag},
          {"p_escape_free", c.insect.p_escape_free},
          {"p_escape_stim", c.insect.p_escape_stim}}},
        {"terrain",
         {{"side", c.terrain.side},
          {"obstacles", obstacles},
          {"hills", hills},
          {"goal",
           {{"x", c.terrain.goal.center.x},
            {"y", c.terrain.goal.center.y},
            {"r", c.terrain.goal.radius}}},
          {"start_zone",
           {{"x_min", z.x_min}, {"x_max", z.x_max}, {"y_min", z.y_min}, {"y_max", z.y_max}}}}},
    };
}

std::optional<json> preset_config(std::string_view name) {
    if (name == "paper-field") return config_to_json(default_config());
    return std::nullopt;
}

ValidationResult load_config(const std::string& name_or_path) {
    if (auto preset = preset_config(name_or_path)) return validate_config(*preset);

    ValidationResult result;
    std::ifstream in(name_or_path);
    if (!in) {
        result.violations.push_back({"<config>", "cannot read '" + name_or_path + "'"});
        return result;
    }
    json raw = json::parse(in, nullptr, /*allow_exceptions=*/false, /*ignore_comments=*/true);
    if (raw.is_discarded()) {
        result.violations.push_back({"<config>", "'" + name_or_path + "' is not valid JSON"});
        return result;
    }
    return validate_config(raw);
}

}  // namespace swarm
