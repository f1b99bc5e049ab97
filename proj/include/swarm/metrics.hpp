#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarm/engine.hpp"

namespace swarm {

struct TrialMetrics {
    std::uint64_t seed = 0;
    std::vector<double> autonomy_per_follower;  // a_i, follower order by id
    double autonomy_mean = 0.0;
    long entanglement_count = 0;
    long snag_count = 0;
    double followers_reached_fraction = 0.0;
    std::optional<double> completion_time;
    std::vector<double> stimulation_time_per_agent;  // s, every agent including the leader
    long steps = 0;
    Termination termination = Termination::Timeout;
};

struct Autonomy {
    std::vector<double> per_follower;
    double mean = 0.0;
};

/// a_i = unstimulated steps / total steps for each follower; the leader is excluded.
/// Throws std::invalid_argument for a log with no steps.
Autonomy autonomy(const TrialLog& log);

long entanglement_count(const TrialLog& log);
long snag_count(const TrialLog& log);

struct SuccessStats {
    double followers_reached_fraction = 0.0;
    std::optional<double> completion_time;  // present only on AllReached
};
SuccessStats success_stats(const TrialLog& log);

std::vector<double> stimulation_time_per_agent(const TrialLog& log);

/// All of the above. Autonomy fields stay empty/zero for a zero-step log.
TrialMetrics compute_metrics(const TrialLog& log);

nlohmann::json metrics_to_json(const TrialMetrics& m);

/// Fixed batch CSV columns, one row per trial.
inline constexpr const char* kBatchCsvHeader =
    "seed,controller,steps,termination,completion_time,autonomy_mean,entanglement_count,"
    "snag_count,followers_reached_fraction,mean_stimulation_time";
void write_batch_csv(std::span<const TrialMetrics> batch, std::string_view controller,
                     std::ostream& out);

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;  // trials contributing (completion_time may be absent)
};

struct MetricComparison {
    std::string metric;
    SummaryStats a;
    SummaryStats b;
    double mean_difference = 0.0;  // a.mean - b.mean
};

/// Descriptive comparison of two batches, metric by metric. Throws on an empty batch.
std::vector<MetricComparison> compare_batches(std::span<const TrialMetrics> batch_a,
                                              std::span<const TrialMetrics> batch_b);

void write_comparison_csv(std::span<const MetricComparison> rows, std::ostream& out);
void print_comparison_table(std::span<const MetricComparison> rows, std::string_view label_a,
                            std::string_view label_b, std::ostream& out);

}  // namespace swarm
