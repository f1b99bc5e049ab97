#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "swarm/engine.hpp"

namespace swarm {

/// Column order of the per-step CSV. Stable; do not reorder.
inline constexpr const char* kTrialCsvHeader = "t,id,x,y,heading,speed,cmd_kind,voltage,condition";

/// Raised when a serialized log cannot be read back. `row` is the 1-based CSV line
/// (the header is line 1), or 0 for sidecar problems.
class LogFormatError : public std::runtime_error {
public:
    LogFormatError(long row, const std::string& what) : std::runtime_error(what), row_(row) {}
    long row() const { return row_; }

private:
    long row_;
};

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

void write_trial_csv(const TrialLog& log, std::ostream& out);
nlohmann::json trial_sidecar(const TrialLog& log);

std::string_view to_string(EventKind kind);
std::string_view to_string(ConditionKind kind);
std::string_view to_string(Termination termination);

/// Rebuilds a TrialLog from its CSV and JSON sidecar.
TrialLog read_trial_log(const std::filesystem::path& csv_path,
                        const std::filesystem::path& sidecar_path);

/// Sidecar path that accompanies a CSV log ("x.csv" -> "x.json").
std::filesystem::path sidecar_path_for(const std::filesystem::path& csv_path);

}  // namespace swarm
