#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swarm/world.hpp"

namespace swarm {

struct Violation {
    std::string field;    // dotted key path, e.g. "tgi.M"
    std::string message;  // the constraint that failed

    std::string to_string() const { return field + ": " + message; }
};

struct ValidationResult {
    std::optional<SimConfig> config;
    std::vector<Violation> violations;

    bool ok() const { return config.has_value(); }
};

/// Validates a parsed config tree. Absent keys take their defaults; every violation is
/// collected rather than stopping at the first. Angles are given in degrees.
ValidationResult validate_config(const nlohmann::json& raw);

/// Inverse of validate_config: the canonical tree for a config.
nlohmann::json config_to_json(const SimConfig& config);

/// Raw tree for a named preset, or nullopt if the name is unknown.
std::optional<nlohmann::json> preset_config(std::string_view name);

/// Accepts a preset name or a path to a JSON file. Parse and I/O failures are
/// reported as violations on the pseudo-field "<config>".
ValidationResult load_config(const std::string& name_or_path);

std::string_view to_string(ControllerKind kind);
std::optional<ControllerKind> parse_controller(std::string_view name);

}  // namespace swarm
