#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "swarm/metrics.hpp"
#include "swarm/world.hpp"

namespace swarm::cli {

struct RunRequest {
    std::string config = "paper-field";  // preset name or JSON path
    std::vector<std::uint64_t> seeds{1};
    std::optional<std::filesystem::path> out_dir;  // falls back to $SWARM_SIM_OUT, then ./out
    std::optional<ControllerKind> controller;
    bool plot = false;
    int parallel = 1;
};

/// Parses "N" or "A..B" (inclusive). Empty or reversed ranges yield nullopt.
std::optional<std::vector<std::uint64_t>> parse_seeds(const std::string& text);

std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& requested);

/// Writes via a temporary file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

int cmd_validate(const std::string& config, std::ostream& out, std::ostream& err);

/// Single trial (first seed): log CSV, JSON sidecar, metrics JSON, optional SVG.
int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Every seed (optionally on `parallel` threads) plus one batch metrics CSV.
int cmd_batch(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Same seeds under two controllers; comparison CSV plus a table on `out`.
int cmd_compare(const RunRequest& request, ControllerKind a, ControllerKind b, std::ostream& out,
                std::ostream& err);

/// Renders an SVG for a CSV log (its sidecar sits next to it). Default output is the
/// CSV path with an .svg extension.
int cmd_plot(const std::filesystem::path& log_csv, const std::optional<std::filesystem::path>& svg_out,
             std::ostream& out, std::ostream& err);

/// Runs a batch in memory; results are in seed order regardless of thread count.
std::vector<TrialMetrics> run_batch(const SimConfig& config, const std::vector<std::uint64_t>& seeds,
                                    int parallel, const std::filesystem::path* artifact_dir);

}  // namespace swarm::cli
