#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swarmsel/arena.hpp"

namespace swarmsel {

// Per-generation swarm fitness F_s(g) of one run.
struct RunTrace {
    std::vector<double> swarm_fitness;
    std::string method;
    std::uint64_t seed = 0;
};

// v_trans * (1 - |v_rot|) * min(proximity). Signed: driving backwards
// yields negative fitness.
double navigation_step_fitness(double v_trans, double v_rot, std::span<const double> proximity);

inline double foraging_step_fitness(int items_collected) { return static_cast<double>(items_collected); }

// Sum of the individual fitness of every agent at one generation.
double swarm_fitness(std::span<const double> per_agent_fitness);

}  // namespace swarmsel
