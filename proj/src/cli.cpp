#include "swarm/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "swarm/config.hpp"
#include "swarm/engine.hpp"
#include "swarm/svg_plot.hpp"
#include "swarm/trial_log.hpp"

namespace swarm::cli {

namespace fs = std::filesystem;

std::optional<std::vector<std::uint64_t>> parse_seeds(const std::string& text) {
    auto parse_one = [](const std::string& s) -> std::optional<std::uint64_t> {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        auto one = parse_one(text);
        if (!one) return std::nullopt;
        return std::vector<std::uint64_t>{*one};
    }
    auto lo = parse_one(text.substr(0, dots));
    auto hi = parse_one(text.substr(dots + 2));
    if (!lo || !hi || *lo > *hi || *hi - *lo > 1'000'000) return std::nullopt;
    std::vector<std::uint64_t> seeds;
    for (auto s = *lo; s <= *hi; ++s) seeds.push_back(s);
    return seeds;
}

fs::path resolve_out_dir(const std::optional<fs::path>& requested) {
    if (requested) return *requested;
    if (const char* env = std::getenv("SWARM_SIM_OUT"); env && *env) return env;
    return "out";
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << contents;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

namespace {

std::optional<SimConfig> load_or_report(const RunRequest& request, std::ostream& err) {
    const ValidationResult v = load_config(request.config);
    if (!v.ok()) {
        err << "invalid config '" << request.config << "':\n";
        for (const auto& viol : v.violations) err << "  " << viol.to_string() << '\n';
        return std::nullopt;
    }
    SimConfig c = *v.config;
    if (request.controller) c.controller = *request.controller;
    return c;
}

std::string stem_for(const SimConfig& c, std::uint64_t seed) {
    return std::string(to_string(c.controller)) + "_seed" + std::to_string(seed);
}

// Writes the per-trial artifacts and returns the metrics.
TrialMetrics write_trial(const SimConfig& config, std::uint64_t seed, const fs::path& dir,
                         bool plot) {
    const TrialLog log = run_trial(config, seed);
    const TrialMetrics m = compute_metrics(log);
    const std::string stem = stem_for(config, seed);

    std::ostringstream csv;
    write_trial_csv(log, csv);
    write_file_atomic(dir / ("trial_" + stem + ".csv"), csv.str());
    write_file_atomic(dir / ("trial_" + stem + ".json"), trial_sidecar(log).dump(2) + "\n");
    write_file_atomic(dir / ("metrics_" + stem + ".json"), metrics_to_json(m).dump(2) + "\n");
    if (plot) write_file_atomic(dir / ("trial_" + stem + ".svg"), render_trajectory_svg(log));
    return m;
}

bool prepare_dir(const fs::path& dir, std::ostream& err) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        err << "cannot create output directory " << dir << ": " << ec.message() << '\n';
        return false;
    }
    return true;
}

}  // namespace

std::vector<TrialMetrics> run_batch(const SimConfig& config, const std::vector<std::uint64_t>& seeds,
                                    int parallel, const fs::path* artifact_dir) {
    std::vector<TrialMetrics> results(seeds.size());
    auto run_one = [&](std::size_t k) {
        results[k] = artifact_dir ? write_trial(config, seeds[k], *artifact_dir, false)
                                  : compute_metrics(run_trial(config, seeds[k]));
    };

    const int workers = std::max(1, std::min<int>(parallel, static_cast<int>(seeds.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < seeds.size(); ++k) run_one(k);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < seeds.size(); k = next++) {
                try {
                    run_one(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

int cmd_validate(const std::string& config, std::ostream& out, std::ostream& err) {
    RunRequest r;
    r.config = config;
    auto c = load_or_report(r, err);
    if (!c) return 2;
    out << config_to_json(*c).dump(2) << '\n';
    return 0;
}

int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err) {
    auto config = load_or_report(request, err);
    if (!config) return 2;
    if (request.seeds.empty()) {
        err << "no seed given\n";
        return 2;
    }
    const fs::path dir = resolve_out_dir(request.out_dir);
    if (!prepare_dir(dir, err)) return 3;
    try {
        const std::uint64_t seed = request.seeds.front();
        const TrialMetrics m = write_trial(*config, seed, dir, request.plot);
        out << "seed " << seed << ": " << to_string(m.termination) << " after " << m.steps
            << " steps, autonomy " << format_number(m.autonomy_mean) << ", entanglements "
            << m.entanglement_count << ", artifacts in " << dir.string() << '\n';
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int cmd_batch(const RunRequest& request, std::ostream& out, std::ostream& err) {
    auto config = load_or_report(request, err);
    if (!config) return 2;
    if (request.seeds.empty()) {
        err << "empty seed range\n";
        return 2;
    }
    const fs::path dir = resolve_out_dir(request.out_dir);
    if (!prepare_dir(dir, err)) return 3;
    try {
        const auto results = run_batch(*config, request.seeds, request.parallel, &dir);
        std::ostringstream csv;
        write_batch_csv(results, to_string(config->controller), csv);
        const fs::path path = dir / ("batch_" + std::string(to_string(config->controller)) + ".csv");
        write_file_atomic(path, csv.str());
        out << results.size() << " trials written; batch metrics in " << path.string() << '\n';
    } catch (const std::exception& e) {
        err << "batch failed: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int cmd_compare(const RunRequest& request, ControllerKind a, ControllerKind b, std::ostream& out,
                std::ostream& err) {
    RunRequest base = request;
    base.controller.reset();
    auto config = load_or_report(base, err);
    if (!config) return 2;
    if (request.seeds.empty()) {
        err << "empty seed range\n";
        return 2;
    }
    const fs::path dir = resolve_out_dir(request.out_dir);
    if (!prepare_dir(dir, err)) return 3;
    try {
        SimConfig ca = *config;
        ca.controller = a;
        SimConfig cb = *config;
        cb.controller = b;
        const auto ra = run_batch(ca, request.seeds, request.parallel, nullptr);
        const auto rb = run_batch(cb, request.seeds, request.parallel, nullptr);
        const auto rows = compare_batches(ra, rb);

        std::ostringstream csv;
        write_comparison_csv(rows, csv);
        const std::string la(to_string(a));
        const std::string lb(to_string(b));
        const fs::path path = dir / ("compare_" + la + "_vs_" + lb + ".csv");
        write_file_atomic(path, csv.str());
        print_comparison_table(rows, la, lb, out);
        out << "comparison written to " << path.string() << '\n';
    } catch (const std::exception& e) {
        err << "compare failed: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int cmd_plot(const fs::path& log_csv, const std::optional<fs::path>& svg_out, std::ostream& out,
             std::ostream& err) {
    TrialLog log;
    try {
        log = read_trial_log(log_csv, sidecar_path_for(log_csv));
    } catch (const LogFormatError& e) {
        err << "malformed log " << log_csv.string() << ": " << e.what() << '\n';
        return 2;
    }
    fs::path target = svg_out.value_or(fs::path(log_csv).replace_extension(".svg"));
    try {
        write_file_atomic(target, render_trajectory_svg(log));
    } catch (const std::exception& e) {
        err << "plot failed: " << e.what() << '\n';
        return 3;
    }
    out << "wrote " << target.string() << '\n';
    return 0;
}

}  // namespace swarm::cli
