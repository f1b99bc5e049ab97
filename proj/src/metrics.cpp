#include "swarm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "swarm/trial_log.hpp"

namespace swarm {

namespace {

// Records after the termination time are padding and never count.
std::span<const StepRecord> counted_steps(const TrialLog& log) {
    const auto end = std::find_if(log.steps.begin(), log.steps.end(), [&](const StepRecord& r) {
        return r.time > log.end_time + 1e-9;
    });
    return {log.steps.begin(), end};
}

}  // namespace

Autonomy autonomy(const TrialLog& log) {
    const auto steps = counted_steps(log);
    if (steps.empty()) throw std::invalid_argument("autonomy: log has no steps");
    const auto n = static_cast<std::size_t>(log.n_agents());
    std::vector<long> unstimulated(n, 0);
    for (const auto& rec : steps) {
        for (const auto& a : rec.agents) {
            if (a.command.voltage == 0.0) ++unstimulated[a.id];
        }
    }
    Autonomy out;
    const auto total = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == log.leader_id) continue;
        out.per_follower.push_back(static_cast<double>(unstimulated[i]) / total);
    }
    out.mean = std::accumulate(out.per_follower.begin(), out.per_follower.end(), 0.0) /
               static_cast<double>(out.per_follower.size());
    return out;
}

long entanglement_count(const TrialLog& log) {
    return std::count_if(log.events.begin(), log.events.end(),
                         [](const Event& e) { return e.kind == EventKind::Entangle; });
}

long snag_count(const TrialLog& log) {
    return std::count_if(log.events.begin(), log.events.end(),
                         [](const Event& e) { return e.kind == EventKind::Snag; });
}

SuccessStats success_stats(const TrialLog& log) {
    SuccessStats s;
    std::vector<bool> reached(log.n_agents(), false);
    double last = 0.0;
    for (const auto& e : log.events) {
        if (e.kind != EventKind::GoalReached) continue;
        reached[e.a] = true;
        last = std::max(last, e.time);
    }
    int followers = 0;
    int arrived = 0;
    for (int i = 0; i < log.n_agents(); ++i) {
        if (i == log.leader_id) continue;
        ++followers;
        arrived += reached[i] ? 1 : 0;
    }
    s.followers_reached_fraction = followers > 0 ? static_cast<double>(arrived) / followers : 0.0;
    if (log.termination == Termination::AllReached) s.completion_time = last;
    return s;
}

std::vector<double> stimulation_time_per_agent(const TrialLog& log) {
    std::vector<double> t(log.n_agents(), 0.0);
    const double dt = log.config.params.dt;
    for (const auto& rec : counted_steps(log)) {
        for (const auto& a : rec.agents) {
            if (a.command.voltage > 0.0) t[a.id] += dt;
        }
    }
    return t;
}

TrialMetrics compute_metrics(const TrialLog& log) {
    TrialMetrics m;
    m.seed = log.seed;
    if (!counted_steps(log).empty()) {
        Autonomy a = autonomy(log);
        m.autonomy_per_follower = std::move(a.per_follower);
        m.autonomy_mean = a.mean;
    }
    m.entanglement_count = entanglement_count(log);
    m.snag_count = snag_count(log);
    const SuccessStats s = success_stats(log);
    m.followers_reached_fraction = s.followers_reached_fraction;
    m.completion_time = s.completion_time;
    m.stimulation_time_per_agent = stimulation_time_per_agent(log);
    m.steps = static_cast<long>(counted_steps(log).size());
    m.termination = log.termination;
    return m;
}

nlohmann::json metrics_to_json(const TrialMetrics& m) {
    nlohmann::json j = {
        {"seed", m.seed},
        {"steps", m.steps},
        {"termination", to_string(m.termination)},
        {"autonomy_per_follower", m.autonomy_per_follower},
        {"autonomy_mean", m.autonomy_mean},
        {"entanglement_count", m.entanglement_count},
        {"snag_count", m.snag_count},
        {"followers_reached_fraction", m.followers_reached_fraction},
        {"stimulation_time_per_agent", m.stimulation_time_per_agent},
    };
    j["completion_time"] = m.completion_time ? nlohmann::json(*m.completion_time) : nullptr;
    return j;
}

namespace {

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

SummaryStats summarize(const std::vector<double>& v) {
    SummaryStats s;
    s.count = v.size();
    if (v.empty()) return s;
    s.mean = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(v.size()));
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

struct MetricColumn {
    const char* name;
    std::optional<double> (*get)(const TrialMetrics&);
};

const MetricColumn kColumns[] = {
    {"autonomy_mean", [](const TrialMetrics& m) -> std::optional<double> { return m.autonomy_mean; }},
    {"entanglement_count",
     [](const TrialMetrics& m) -> std::optional<double> { return double(m.entanglement_count); }},
    {"snag_count", [](const TrialMetrics& m) -> std::optional<double> { return double(m.snag_count); }},
    {"followers_reached_fraction",
     [](const TrialMetrics& m) -> std::optional<double> { return m.followers_reached_fraction; }},
    {"completion_time", [](const TrialMetrics& m) { return m.completion_time; }},
    {"mean_stimulation_time",
     [](const TrialMetrics& m) -> std::optional<double> { return mean_of(m.stimulation_time_per_agent); }},
};

}  // namespace

void write_batch_csv(std::span<const TrialMetrics> batch, std::string_view controller,
                     std::ostream& out) {
    out << kBatchCsvHeader << '\n';
    for (const auto& m : batch) {
        out << m.seed << ',' << controller << ',' << m.steps << ',' << to_string(m.termination)
            << ',' << (m.completion_time ? format_number(*m.completion_time) : "") << ','
            << format_number(m.autonomy_mean) << ',' << m.entanglement_count << ','
            << m.snag_count << ',' << format_number(m.followers_reached_fraction) << ','
            << format_number(mean_of(m.stimulation_time_per_agent)) << '\n';
    }
}

std::vector<MetricComparison> compare_batches(std::span<const TrialMetrics> batch_a,
                                              std::span<const TrialMetrics> batch_b) {
    if (batch_a.empty() || batch_b.empty())
        throw std::invalid_argument("compare_batches: both batches must be non-empty");
    std::vector<MetricComparison> rows;
    for (const auto& col : kColumns) {
        std::vector<double> va;
        std::vector<double> vb;
        for (const auto& m : batch_a)
            if (auto x = col.get(m)) va.push_back(*x);
        for (const auto& m : batch_b)
            if (auto x = col.get(m)) vb.push_back(*x);
        MetricComparison row{col.name, summarize(va), summarize(vb), 0.0};
        row.mean_difference = row.a.mean - row.b.mean;
        rows.push_back(row);
    }
    return rows;
}

void write_comparison_csv(std::span<const MetricComparison> rows, std::ostream& out) {
    // A metric with no contributing trials (completion_time when nothing finished) has
    // empty statistic fields rather than zeros.
    const auto stats = [&out](const SummaryStats& s) {
        if (s.count == 0) {
            out << ",,,,0";
            return;
        }
        out << format_number(s.mean) << ',' << format_number(s.stddev) << ','
            << format_number(s.min) << ',' << format_number(s.max) << ',' << s.count;
    };
    out << "metric,a_mean,a_std,a_min,a_max,a_n,b_mean,b_std,b_min,b_max,b_n,mean_difference\n";
    for (const auto& r : rows) {
        out << r.metric << ',';
        stats(r.a);
        out << ',';
        stats(r.b);
        out << ',';
        if (r.a.count > 0 && r.b.count > 0) out << format_number(r.mean_difference);
        out << '\n';
    }
}

void print_comparison_table(std::span<const MetricComparison> rows, std::string_view label_a,
                            std::string_view label_b, std::ostream& out) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %20s %20s %12s\n", "metric",
                  (std::string(label_a) + " mean (sd)").c_str(),
                  (std::string(label_b) + " mean (sd)").c_str(), "difference");
    out << line;
    for (const auto& r : rows) {
        char a[64] = "n/a";
        char b[64] = "n/a";
        char diff[32] = "n/a";
        if (r.a.count > 0) std::snprintf(a, sizeof(a), "%.3f (%.3f)", r.a.mean, r.a.stddev);
        if (r.b.count > 0) std::snprintf(b, sizeof(b), "%.3f (%.3f)", r.b.mean, r.b.stddev);
        if (r.a.count > 0 && r.b.count > 0) std::snprintf(diff, sizeof(diff), "%.3f", r.mean_difference);
        std::snprintf(line, sizeof(line), "%-28s %20s %20s %12s\n", r.metric.c_str(), a, b, diff);
        out << line;
    }
}

}  // namespace swarm
