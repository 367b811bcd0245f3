#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "swarmsel/evolution.hpp"
#include "swarmsel/metrics.hpp"
#include "swarmsel/selection.hpp"

namespace swarmsel {

// A full experiment: one task, several selection methods, replicated runs.
//
// Config files are flat `key value` lines; `#` starts a comment. Keys:
//
//   task             navigation | foraging            (required)
//   methods          tokens from best rank tournament random, space or comma separated
//   runs_per_method  30        swarm_size     50       sim_steps   500000
//   max_generations  0 (no cap)
//   t_e_base         2000      t_e_jitter     500      t_l         200
//   sigma            0.5       food_items     150      tournament_k 2
//   seed             master seed, default 1
//   arena_width      1000      arena_height   1000
//   obstacle x1 y1 x2 y2       repeatable; any occurrence replaces the default layout
//   obstacle none              an arena without interior obstacles
//   arena_file       path to an arena description (relative to the config file)
//   sensor_range 64  v_max 2  theta_max 0.39269908169872414  comm_radius 64
//   agent_radius 5   food_radius 5
//   tail_fraction 0.08  budget_fraction 0.92  target_fraction 0.8
//
// Arena description files use the same syntax with the keys `width`,
// `height` and repeated `obstacle` lines; an arena file supplies every
// interior obstacle (none if it lists none) and overrides arena_width,
// arena_height and inline obstacles.
//
// Unknown keys, repeated keys (other than `obstacle`), malformed values and
// out-of-range values raise ConfigError with the key and line number.
struct ExperimentConfig {
    SimulationConfig sim;  // `sim.method` is ignored; see for_method()
    std::vector<SelectionMethod> methods{SelectionMethod::Best, SelectionMethod::Rank, SelectionMethod::Tournament,
                                         SelectionMethod::Random};
    int runs_per_method = 30;
    std::uint64_t seed = 1;
    MeasureParams measures;

    SimulationConfig for_method(SelectionMethod method) const {
        SimulationConfig c = sim;
        c.method = method;
        return c;
    }
};

ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>",
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Parses an arena description into width, height and obstacles of `params`.
void parse_arena(std::string_view text, ArenaParams& params, const std::string& origin = "<arena>");

// Validates every field of the experiment (throws ConfigError).
void validate(const ExperimentConfig& config);

// Canonical text form: every key in a fixed order, obstacles inlined, doubles
// printed to round-trip. parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& config);

// FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace swarmsel
