#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swarmsel/arena.hpp"
#include "swarmsel/rng.hpp"

namespace swarmsel {

// Synaptic weights of the controller plus bookkeeping. The flat layout is
// outputs-major: for output j (0 = translation, 1 = rotation) the block
//   [w_in_0 .. w_in_{n-1}, w_bias, w_prev_trans, w_prev_rot]
// starts at j * (n + 3).
struct Genome {
    std::vector<double> weights;
    double fitness = 0.0;
    bool evaluated = false;
    std::uint64_t id = 0;         // unique within a run; 0 = unassigned
    std::uint64_t parent_id = 0;  // id of the genome this was mutated from
    int origin_agent = -1;
    int generation = 0;
};

struct ControlOutput {
    double v_trans = 0.0;
    double v_rot = 0.0;
};

inline constexpr std::size_t kNumOutputs = 2;

constexpr std::size_t input_count(TaskKind task) {
    return task == TaskKind::Navigation ? kNumRays : 2 * kNumRays;
}

// 2 * (inputs + bias + two recurrent links): 22 for navigation, 38 for foraging.
constexpr std::size_t genome_length(std::size_t num_inputs) { return kNumOutputs * (num_inputs + 3); }
constexpr std::size_t genome_length(TaskKind task) { return genome_length(input_count(task)); }

// Proximity readings first, then food readings when foraging.
std::vector<double> controller_inputs(const SensorReading& reading, TaskKind task);

// One forward pass. Throws std::invalid_argument when the genome length does
// not match the number of inputs.
ControlOutput activate(std::span<const double> weights, std::span<const double> inputs,
                       const ControlOutput& prev);
ControlOutput activate(const Genome& genome, const SensorReading& reading, TaskKind task,
                       const ControlOutput& prev);

// Adds N(0, sigma^2) to every weight of a copy. The copy is unevaluated,
// one generation older, and records the source genome as its parent.
Genome mutate(const Genome& genome, double sigma, Rng& rng);

// Weights drawn from U[-1, 1].
Genome random_genome(std::size_t length, Rng& rng);

}  // namespace swarmsel
