// Full-scale capability check: one run per task with the published
// settings, audited by the invariant checker. Not part of the desk suite.

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "invariant_checker.hpp"
#include "swarmsel/config.hpp"
#include "swarmsel/harness.hpp"

using namespace swarmsel;

int main() {
    int failures = 0;
    for (const char* name : {"paper_navigation.cfg", "paper_foraging.cfg"}) {
        const ExperimentConfig cfg = load_config(std::filesystem::path(SWARMSEL_CONFIG_DIR) / name);
        const bool verbatim = cfg.sim.swarm_size == 50 && cfg.sim.sim_steps == 500000 && cfg.runs_per_method == 30 &&
                              cfg.sim.sigma == 0.5 && cfg.sim.t_e_base == 2000 && cfg.sim.t_e_jitter == 500 &&
                              cfg.sim.t_l == 200 && cfg.sim.max_generations == 0 &&
                              (cfg.sim.task == TaskKind::Navigation || cfg.sim.food_items == 150);

        const SimulationConfig sim = cfg.for_method(SelectionMethod::Random);
        acceptance::InvariantChecker checker(sim);
        const auto t0 = std::chrono::steady_clock::now();
        const RunTrace trace = run_simulation(sim, derive_seed(cfg.seed, "random", 0), &checker);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const std::size_t g = trace.swarm_fitness.size();
        const bool in_range = g >= 225 && g <= 256;
        const bool clean = checker.violations.total() == 0;
        const double shared = checker.max_shared_boundary_fraction(static_cast<std::size_t>(sim.swarm_size));
        const bool ok = verbatim && in_range && clean;
        if (!ok) ++failures;
        std::printf("%s  [8] %s: settings verbatim %s, %zu generations (want 225..256), %ld invariant violations, "
                    "%.1f s\n",
                    ok ? "PASS" : "FAIL", std::string(to_token(sim.task)).c_str(), verbatim ? "yes" : "no", g,
                    checker.violations.total(), seconds);
        for (const auto& s : checker.violations.samples) std::printf("      %s\n", s.c_str());

        const bool desync = shared < 0.10;
        if (!desync) ++failures;
        std::printf("%s  [desync] %s: at most %.0f%% of agents end a generation on the same step (want < 10%%)\n",
                    desync ? "PASS" : "FAIL", std::string(to_token(sim.task)).c_str(), 100.0 * shared);
    }
    return failures == 0 ? 0 : 1;
}
