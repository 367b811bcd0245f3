#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "swarmsel/neuro.hpp"
#include "swarmsel/rng.hpp"

namespace swarmsel {

enum class SelectionMethod { Best, Rank, Tournament, Random };

std::string_view to_token(SelectionMethod method);
SelectionMethod parse_selection(std::string_view token);  // throws std::invalid_argument

// One entry of an agent's local population.
struct LocalEntry {
    Genome genome;
    double fitness = 0.0;
};

using LocalPopulation = std::vector<LocalEntry>;

// All operators work on the fitness column and return an index into it.
// An empty population throws std::invalid_argument. Ties go to the lowest
// index.

std::size_t select_best(std::span<const double> fitness);

// Stable descending sort, then rank i (1-based) with probability
// (n + 1 - i) / (n (n + 1) / 2).
std::size_t select_rank_based(std::span<const double> fitness, Rng& rng);

// k distinct indices uniformly without replacement (k clamped to n), best
// of the sample wins.
std::size_t select_tournament(std::span<const double> fitness, std::size_t k, Rng& rng);

std::size_t select_random(std::span<const double> fitness, Rng& rng);

std::size_t select(SelectionMethod method, std::span<const double> fitness, std::size_t tournament_k, Rng& rng);
std::size_t select(SelectionMethod method, const LocalPopulation& pop, std::size_t tournament_k, Rng& rng);

}  // namespace swarmsel
