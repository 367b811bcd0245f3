// Command-line front end: run, analyze, plotdata, validate.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swarmsel/config.hpp"
#include "swarmsel/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

int cmd_validate(const std::string& path) {
    const swarmsel::ExperimentConfig cfg = swarmsel::load_config(path);
    std::cout << "# config_hash " << swarmsel::config_hash(cfg) << '\n' << swarmsel::to_config_text(cfg);
    return kOk;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, unsigned jobs, const std::string& out) {
    swarmsel::ExperimentConfig cfg = swarmsel::load_config(path);
    if (seed) cfg.seed = *seed;

    swarmsel::RunOptions options;
    options.out_dir = out;
    options.jobs = jobs;
    options.on_record = [](const swarmsel::RunRecord& r, bool resumed) {
        const auto& fs = r.trace.swarm_fitness;
        std::printf("%-10s run %3d  %s  generations %zu  final F_s %s  (%.1fs)\n", r.method.c_str(), r.run,
                    resumed ? "resumed " : "computed", fs.size(),
                    fs.empty() ? "-" : swarmsel::format_decimal(fs.back()).c_str(), r.wall_seconds);
        std::fflush(stdout);
    };
    const swarmsel::ExperimentResult result = swarmsel::run_experiment(cfg, options);
    std::printf("%zu records in %s (%d resumed)\n", result.records.size(), out.c_str(), result.resumed);
    for (const auto& f : result.failures)
        std::fprintf(stderr, "failed: %s run %d: %s\n", f.method.c_str(), f.run, f.error.c_str());
    return result.failures.empty() ? kOk : kRuntimeError;
}

int cmd_analyze(const std::string& dir) {
    const swarmsel::LoadedExperiment loaded = swarmsel::load_experiment(dir);
    const swarmsel::Analysis analysis = swarmsel::analyze(loaded.records, loaded.config);
    for (const auto& w : analysis.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    for (const auto& p : swarmsel::write_analysis(analysis, loaded.config, dir)) std::printf("wrote %s\n", p.c_str());

    std::printf("target %s\n", swarmsel::format_decimal(analysis.target).c_str());
    for (const auto& c : analysis.comparisons) {
        std::printf("%-10s vs %-10s %s  U=%-8s p=%-12s %s\n", c.method_a.c_str(), c.method_b.c_str(), c.measure.c_str(),
                    swarmsel::format_decimal(c.test.u).c_str(), swarmsel::format_decimal(c.test.p).c_str(),
                    c.test.significant() ? "significant" : "n.s.");
    }
    return kOk;
}

int cmd_plotdata(const std::string& dir) {
    const swarmsel::LoadedExperiment loaded = swarmsel::load_experiment(dir);
    const swarmsel::Analysis analysis = swarmsel::analyze(loaded.records, loaded.config);
    for (const auto& w : analysis.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    for (const auto& p : swarmsel::emit_plot_data(analysis, loaded.config, dir)) std::printf("wrote %s\n", p.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"On-line distributed evolution of swarm controllers: experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string dir;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::string out = "results";

    auto* run = app.add_subcommand("run", "run every (method, run) cell of an experiment");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--jobs", jobs, "parallel runs (default: hardware concurrency)");
    run->add_option("--out", out, "output directory")->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "compute measures and pairwise Mann-Whitney tests");
    analyze->add_option("dir", dir, "experiment output directory")->required();

    auto* plotdata = app.add_subcommand("plotdata", "write median curves and per-run measures as CSV");
    plotdata->add_option("dir", dir, "experiment output directory")->required();

    auto* validate = app.add_subcommand("validate", "check a config file and print its resolved form");
    validate->add_option("config", config_path, "experiment config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, seed, jobs, out);
        if (*analyze) return cmd_analyze(dir);
        if (*plotdata) return cmd_plotdata(dir);
        if (*validate) return cmd_validate(config_path);
    } catch (const swarmsel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
