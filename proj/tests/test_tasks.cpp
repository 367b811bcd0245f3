#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "swarmsel/tasks.hpp"

using namespace swarmsel;

TEST_CASE("navigation step fitness examples") {
    const std::array<double, 8> ones{1, 1, 1, 1, 1, 1, 1, 1};
    CHECK(navigation_step_fitness(1.0, 0.0, ones) == 1.0);
    CHECK(navigation_step_fitness(0.0, 0.7, ones) == 0.0);
    CHECK(navigation_step_fitness(0.0, -1.0, std::array<double, 8>{0.2, 0.1, 1, 1, 1, 1, 1, 1}) == 0.0);
    const std::array<double, 8> near{1, 0.9, 0.8, 1, 1, 0.95, 1, 1};
    CHECK(navigation_step_fitness(0.5, 0.5, near) == doctest::Approx(0.2));
}

TEST_CASE("navigation step fitness is signed and bounded") {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        std::array<double, 8> p;
        for (auto& v : p) v = rng.uniform01();
        const double vt = rng.uniform(-1, 1), vr = rng.uniform(-1, 1);
        const double f = navigation_step_fitness(vt, vr, p);
        CHECK(f >= -1.0);
        CHECK(f <= 1.0);
        CHECK((f < 1.0));
        if (vt < 0 && std::abs(vr) < 1 && *std::min_element(p.begin(), p.end()) > 0) CHECK(f < 0);
    }
    const std::array<double, 8> ones{1, 1, 1, 1, 1, 1, 1, 1};
    CHECK(navigation_step_fitness(-1.0, 0.0, ones) == -1.0);
}

TEST_CASE("foraging step fitness") {
    CHECK(foraging_step_fitness(0) == 0.0);
    CHECK(foraging_step_fitness(2) == 2.0);
    // items on steps {3, 10, 10}
    double phase = 0.0;
    for (int step = 0; step < 20; ++step) phase += foraging_step_fitness((step == 3) + 2 * (step == 10));
    CHECK(phase == 3.0);
}

TEST_CASE("swarm fitness examples") {
    CHECK(swarm_fitness(std::vector<double>(50, 0.0)) == 0.0);
    CHECK(swarm_fitness(std::vector<double>{1.5, 2.5}) == 4.0);
    CHECK(swarm_fitness(std::vector<double>(50, 3.0)) == 150.0);
    CHECK(swarm_fitness(std::vector<double>{}) == 0.0);
}

TEST_CASE("swarm fitness ignores the order of agents exactly") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> f(1 + rng.below(60));
        for (auto& v : f) v = rng.uniform(-1000, 1000) * std::pow(10.0, rng.uniform(-6, 6));
        const double base = swarm_fitness(f);
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            for (std::size_t i = f.size(); i > 1; --i) std::swap(f[i - 1], f[rng.below(i)]);
            CHECK(swarm_fitness(f) == base);
        }
    }
}
