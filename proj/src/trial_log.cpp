#include "swarm/trial_log.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "swarm/config.hpp"

namespace swarm {

using nlohmann::json;

std::string format_number(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Entangle: return "entangle";
        case EventKind::Release: return "release";
        case EventKind::Snag: return "snag";
        case EventKind::Escape: return "escape";
        case EventKind::GoalReached: return "goal_reached";
        case EventKind::Lost: return "lost";
    }
    return "lost";
}

std::string_view to_string(ConditionKind kind) {
    switch (kind) {
        case ConditionKind::Normal: return "normal";
        case ConditionKind::Entangled: return "entangled";
        case ConditionKind::Snagged: return "snagged";
    }
    return "normal";
}

std::string_view to_string(Termination termination) {
    return termination == Termination::AllReached ? "all_reached" : "timeout";
}

void write_trial_csv(const TrialLog& log, std::ostream& out) {
    out << kTrialCsvHeader << '\n';
    for (const auto& rec : log.steps) {
        const std::string t = format_number(rec.time);
        for (const auto& a : rec.agents) {
            out << t << ',' << a.id << ',' << format_number(a.position.x) << ','
                << format_number(a.position.y) << ',' << format_number(a.heading) << ','
                << format_number(a.speed) << ',' << to_string(a.command.kind) << ','
                << format_number(a.command.voltage) << ',' << to_string(a.condition) << '\n';
        }
    }
}

json trial_sidecar(const TrialLog& log) {
    json events = json::array();
    for (const auto& e : log.events) {
        json j = {{"t", e.time}, {"kind", to_string(e.kind)}, {"a", e.a}};
        if (e.b >= 0) j["b"] = e.b;
        events.push_back(std::move(j));
    }
    json termination = {{"kind", to_string(log.termination)}, {"time", log.end_time}};
    return {
        {"format", "swarm-trial-log/1"},
        {"seed", log.seed},
        {"leader_id", log.leader_id},
        {"n_agents", log.n_agents()},
        {"steps", log.steps.size()},
        {"columns", kTrialCsvHeader},
        {"config", config_to_json(log.config)},
        {"events", std::move(events)},
        {"termination", std::move(termination)},
    };
}

std::filesystem::path sidecar_path_for(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".json");
    return p;
}

namespace {

template <class T>
bool parse_field(std::string_view text, T& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(line.substr(start));
            return parts;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::optional<StimKind> parse_stim(std::string_view s) {
    for (auto k : {StimKind::None, StimKind::SteerLeft, StimKind::SteerRight, StimKind::Accelerate})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::optional<ConditionKind> parse_condition(std::string_view s) {
    for (auto k : {ConditionKind::Normal, ConditionKind::Entangled, ConditionKind::Snagged})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::optional<EventKind> parse_event(std::string_view s) {
    for (auto k : {EventKind::Entangle, EventKind::Release, EventKind::Snag, EventKind::Escape,
                   EventKind::GoalReached, EventKind::Lost})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

void read_sidecar(const std::filesystem::path& path, TrialLog& log) {
    std::ifstream in(path);
    if (!in) throw LogFormatError(0, "cannot read sidecar " + path.string());
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw LogFormatError(0, "sidecar is not a JSON object");
    try {
        if (j.at("format").get<std::string>() != "swarm-trial-log/1")
            throw LogFormatError(0, "unsupported sidecar format");
        const ValidationResult v = validate_config(j.at("config"));
        if (!v.ok())
            throw LogFormatError(0, "sidecar config invalid: " + v.violations.front().to_string());
        log.config = *v.config;
        log.seed = j.at("seed").get<std::uint64_t>();
        log.leader_id = j.at("leader_id").get<int>();
        for (const auto& e : j.at("events")) {
            auto kind = parse_event(e.at("kind").get<std::string>());
            if (!kind) throw LogFormatError(0, "unknown event kind in sidecar");
            log.events.push_back(
                {e.at("t").get<double>(), *kind, e.at("a").get<int>(), e.value("b", -1)});
        }
        const auto& term = j.at("termination");
        log.termination = term.at("kind").get<std::string>() == "all_reached"
                              ? Termination::AllReached
                              : Termination::Timeout;
        log.end_time = term.at("time").get<double>();
    } catch (const json::exception& e) {
        throw LogFormatError(0, std::string("malformed sidecar: ") + e.what());
    }
}

}  // namespace

TrialLog read_trial_log(const std::filesystem::path& csv_path,
                        const std::filesystem::path& sidecar_path) {
    TrialLog log;
    read_sidecar(sidecar_path, log);
    const int n = log.n_agents();

    std::ifstream in(csv_path);
    if (!in) throw LogFormatError(0, "cannot read log " + csv_path.string());
    std::string line;
    long row = 1;
    if (!std::getline(in, line) || line != kTrialCsvHeader)
        throw LogFormatError(1, "row 1: expected header '" + std::string(kTrialCsvHeader) + "'");

    auto bad = [&](const std::string& why) {
        return LogFormatError(row, "row " + std::to_string(row) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 9) throw bad("expected 9 columns, got " + std::to_string(f.size()));
        AgentRecord a;
        double t = 0.0;
        if (!parse_field(f[0], t)) throw bad("bad time");
        if (!parse_field(f[1], a.id) || a.id < 0 || a.id >= n) throw bad("bad agent id");
        if (!parse_field(f[2], a.position.x) || !parse_field(f[3], a.position.y))
            throw bad("bad position");
        if (!parse_field(f[4], a.heading) || !parse_field(f[5], a.speed)) throw bad("bad heading/speed");
        auto kind = parse_stim(f[6]);
        if (!kind) throw bad("unknown command kind");
        a.command.kind = *kind;
        if (!parse_field(f[7], a.command.voltage)) throw bad("bad voltage");
        auto cond = parse_condition(f[8]);
        if (!cond) throw bad("unknown condition");
        a.condition = *cond;

        if (log.steps.empty() || log.steps.back().agents.size() == static_cast<std::size_t>(n)) {
            log.steps.push_back({t, {}});
        } else if (log.steps.back().time != t) {
            throw bad("step has fewer than " + std::to_string(n) + " agent rows");
        }
        if (a.id != static_cast<int>(log.steps.back().agents.size()))
            throw bad("agent rows out of order");
        log.steps.back().agents.push_back(a);
    }
    if (!log.steps.empty() && log.steps.back().agents.size() != static_cast<std::size_t>(n))
        throw LogFormatError(row, "row " + std::to_string(row) + ": truncated final step");
    return log;
}

}  // namespace swarm
