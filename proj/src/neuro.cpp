#include "swarmsel/neuro.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmsel {

std::vector<double> controller_inputs(const SensorReading& reading, TaskKind task) {
    std::vector<double> in(reading.proximity.begin(), reading.proximity.end());
    if (task == TaskKind::Foraging) in.insert(in.end(), reading.food.begin(), reading.food.end());
    return in;
}

ControlOutput activate(std::span<const double> weights, std::span<const double> inputs,
                       const ControlOutput& prev) {
    const std::size_t n = inputs.size();
    if (weights.size() != genome_length(n)) {
        throw std::invalid_argument("genome has " + std::to_string(weights.size()) + " weights but " +
                                    std::to_string(n) + " inputs need " + std::to_string(genome_length(n)));
    }
    double act[kNumOutputs];
    const std::size_t stride = n + 3;
    for (std::size_t j = 0; j < kNumOutputs; ++j) {
        const double* w = weights.data() + j * stride;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += w[i] * inputs[i];
        sum += w[n];
        sum += w[n + 1] * prev.v_trans;
        sum += w[n + 2] * prev.v_rot;
        act[j] = std::tanh(sum);
    }
    return {act[0], act[1]};
}

ControlOutput activate(const Genome& genome, const SensorReading& reading, TaskKind task,
                       const ControlOutput& prev) {
    double buf[2 * kNumRays];
    std::size_t n = 0;
    for (double v : reading.proximity) buf[n++] = v;
    if (task == TaskKind::Foraging)
        for (double v : reading.food) buf[n++] = v;
    return activate(genome.weights, std::span<const double>(buf, n), prev);
}

Genome mutate(const Genome& genome, double sigma, Rng& rng) {
    Genome child;
    child.weights.reserve(genome.weights.size());
    for (double w : genome.weights) child.weights.push_back(w + sigma * rng.normal());
    child.parent_id = genome.id;
    child.origin_agent = genome.origin_agent;
    child.generation = genome.generation + 1;
    return child;
}

Genome random_genome(std::size_t length, Rng& rng) {
    Genome g;
    g.weights.resize(length);
    for (double& w : g.weights) w = rng.uniform(-1.0, 1.0);
    return g;
}

}  // namespace swarmsel
