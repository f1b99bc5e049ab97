#pragma once

#include <string_view>

namespace swarm {

enum class StimKind { None, SteerLeft, SteerRight, Accelerate };

/// One stimulation per step. voltage is 0 iff kind is None.
struct StimCommand {
    StimKind kind = StimKind::None;
    double voltage = 0.0;

    static StimCommand none() { return {}; }
    bool active() const { return kind != StimKind::None && voltage > 0.0; }
    bool operator==(const StimCommand&) const = default;
};

std::string_view to_string(StimKind kind);

}  // namespace swarm
