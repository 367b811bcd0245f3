#include "swarmsel/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace swarmsel {

double navigation_step_fitness(double v_trans, double v_rot, std::span<const double> proximity) {
    const double closest = proximity.empty() ? 1.0 : *std::min_element(proximity.begin(), proximity.end());
    return v_trans * (1.0 - std::abs(v_rot)) * closest;
}

double swarm_fitness(std::span<const double> per_agent_fitness) {
    // Summing in sorted order makes the result independent of agent order.
    std::vector<double> sorted(per_agent_fitness.begin(), per_agent_fitness.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double f : sorted) sum += f;
    return sum;
}

}  // namespace swarmsel
