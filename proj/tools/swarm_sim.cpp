// swarm_sim: validate configs, run trials and batches, compare controllers, plot logs.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarm/cli.hpp"
#include "swarm/config.hpp"

namespace {

std::optional<swarm::ControllerKind> controller_or_exit(const std::string& name) {
    if (name.empty()) return std::nullopt;
    auto k = swarm::parse_controller(name);
    if (!k) {
        std::cerr << "unknown controller '" << name << "' (expected tgi or boids)\n";
        std::exit(2);
    }
    return k;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leader-follower swarm navigation simulator"};
    app.require_subcommand(1);

    std::string config = "paper-field";
    std::string seed_text;
    std::string seeds_text;
    std::string out_dir;
    std::string controller;
    bool plot = false;
    int parallel = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "Preset name (paper-field) or JSON config path");
        sub->add_option("--out", out_dir, "Output directory (default $SWARM_SIM_OUT or ./out)");
    };

    auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults");
    validate->add_option("--config", config, "Preset name or JSON config path");

    auto* run = app.add_subcommand("run", "Run one trial");
    add_common(run);
    run->add_option("--seed", seed_text, "Trial seed")->default_val("1");
    run->add_option("--controller", controller, "tgi or boids (overrides config)");
    run->add_flag("--plot", plot, "Also write an SVG trajectory plot");

    auto* batch = app.add_subcommand("batch", "Run a range of seeds");
    add_common(batch);
    auto* batch_seed = batch->add_option("--seed", seed_text, "Single seed");
    batch->add_option("--seeds", seeds_text, "Seed range A..B")->excludes(batch_seed);
    batch->add_option("--controller", controller, "tgi or boids (overrides config)");
    batch->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "Run the same seeds under two controllers");
    add_common(compare);
    auto* compare_seed = compare->add_option("--seed", seed_text, "Single seed");
    compare->add_option("--seeds", seeds_text, "Seed range A..B")->excludes(compare_seed);
    std::string ctrl_a = "tgi";
    std::string ctrl_b = "boids";
    compare->add_option("--a", ctrl_a, "First controller")->default_val("tgi");
    compare->add_option("--b", ctrl_b, "Second controller")->default_val("boids");
    compare->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto* plot_cmd = app.add_subcommand("plot", "Render an SVG from a trial log CSV");
    std::string log_path;
    std::string svg_path;
    plot_cmd->add_option("log", log_path, "Trial log CSV (sidecar JSON next to it)")->required();
    plot_cmd->add_option("--out", svg_path, "SVG path (default: log path with .svg)");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return swarm::cli::cmd_validate(config, std::cout, std::cerr);

    if (plot_cmd->parsed()) {
        std::optional<std::filesystem::path> target;
        if (!svg_path.empty()) target = svg_path;
        return swarm::cli::cmd_plot(log_path, target, std::cout, std::cerr);
    }

    swarm::cli::RunRequest request;
    request.config = config;
    if (!out_dir.empty()) request.out_dir = out_dir;
    request.plot = plot;
    request.parallel = parallel;
    const std::string& seed_spec = !seeds_text.empty() ? seeds_text : (seed_text.empty() ? "1" : seed_text);
    auto seeds = swarm::cli::parse_seeds(seed_spec);
    if (!seeds) {
        std::cerr << "invalid seed specification '" << seed_spec << "'\n";
        return 2;
    }
    request.seeds = *seeds;

    if (run->parsed()) {
        request.controller = controller_or_exit(controller);
        return swarm::cli::cmd_run(request, std::cout, std::cerr);
    }
    if (batch->parsed()) {
        request.controller = controller_or_exit(controller);
        return swarm::cli::cmd_batch(request, std::cout, std::cerr);
    }
    auto a = controller_or_exit(ctrl_a);
    auto b = controller_or_exit(ctrl_b);
    return swarm::cli::cmd_compare(request, *a, *b, std::cout, std::cerr);
}
