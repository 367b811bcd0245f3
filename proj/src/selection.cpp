#include "swarmsel/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swarmsel {

namespace {

void require_non_empty(std::span<const double> fitness) {
    if (fitness.empty()) throw std::invalid_argument("selection on an empty local population");
}

}  // namespace

std::string_view to_token(SelectionMethod method) {
    switch (method) {
        case SelectionMethod::Best: return "best";
        case SelectionMethod::Rank: return "rank";
        case SelectionMethod::Tournament: return "tournament";
        case SelectionMethod::Random: return "random";
    }
    return "?";
}

SelectionMethod parse_selection(std::string_view token) {
    if (token == "best") return SelectionMethod::Best;
    if (token == "rank") return SelectionMethod::Rank;
    if (token == "tournament") return SelectionMethod::Tournament;
    if (token == "random") return SelectionMethod::Random;
    throw std::invalid_argument("unknown selection method '" + std::string(token) +
                                "' (expected best|rank|tournament|random)");
}

std::size_t select_best(std::span<const double> fitness) {
    require_non_empty(fitness);
    std::size_t best = 0;
    for (std::size_t i = 1; i < fitness.size(); ++i)
        if (fitness[i] > fitness[best]) best = i;
    return best;
}

std::size_t select_rank_based(std::span<const double> fitness, Rng& rng) {
    require_non_empty(fitness);
    const std::size_t n = fitness.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

    // Integer weights n, n-1, ..., 1 over a total of n(n+1)/2 tickets.
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
    std::uint64_t ticket = rng.below(total);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t weight = n - i;
        if (ticket < weight) return order[i];
        ticket -= weight;
    }
    return order.back();
}

std::size_t select_tournament(std::span<const double> fitness, std::size_t k, Rng& rng) {
    require_non_empty(fitness);
    if (k == 0) throw std::invalid_argument("tournament size must be >= 1");
    const std::size_t n = fitness.size();
    k = std::min(k, n);

    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);

    std::size_t winner = idx[0];
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t c = idx[i];
        if (fitness[c] > fitness[winner] || (fitness[c] == fitness[winner] && c < winner)) winner = c;
    }
    return winner;
}

std::size_t select_random(std::span<const double> fitness, Rng& rng) {
    require_non_empty(fitness);
    return rng.below(fitness.size());
}

std::size_t select(SelectionMethod method, std::span<const double> fitness, std::size_t tournament_k, Rng& rng) {
    switch (method) {
        case SelectionMethod::Best: return select_best(fitness);
        case SelectionMethod::Rank: return select_rank_based(fitness, rng);
        case SelectionMethod::Tournament: return select_tournament(fitness, tournament_k, rng);
        case SelectionMethod::Random: return select_random(fitness, rng);
    }
    throw std::logic_error("unhandled selection method");
}

std::size_t select(SelectionMethod method, const LocalPopulation& pop, std::size_t tournament_k, Rng& rng) {
    std::vector<double> fitness;
    fitness.reserve(pop.size());
    for (const LocalEntry& e : pop) fitness.push_back(e.fitness);
    return select(method, fitness, tournament_k, rng);
}

}  // namespace swarmsel
