#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "swarmsel/neuro.hpp"

using namespace swarmsel;

namespace {

// Written from the layout description, not from the library code.
ControlOutput reference_forward(const std::vector<double>& w, const std::vector<double>& in, ControlOutput prev) {
    const std::size_t block = in.size() + 3;
    double sums[2] = {0.0, 0.0};
    for (int j = 0; j < 2; ++j) {
        const double* row = w.data() + j * block;
        double s = 0.0;
        for (std::size_t i = 0; i < in.size(); ++i) s += row[i] * in[i];
        s += row[in.size()];
        s += row[in.size() + 1] * prev.v_trans;
        s += row[in.size() + 2] * prev.v_rot;
        sums[j] = s;
    }
    return {std::tanh(sums[0]), std::tanh(sums[1])};
}

}  // namespace

TEST_CASE("genome length formula") {
    CHECK(genome_length(8) == 22);
    CHECK(genome_length(16) == 38);
    CHECK(genome_length(TaskKind::Navigation) == 22);
    CHECK(genome_length(TaskKind::Foraging) == 38);
    for (std::size_t n = 0; n < 40; ++n) CHECK(genome_length(n) == 2 * (n + 3));
}

TEST_CASE("zero weights give zero output") {
    const std::vector<double> w(22, 0.0);
    const std::vector<double> in{0.1, 0.9, 1, 0, 0.3, 0.3, 0.5, 0.7};
    const ControlOutput out = activate(w, in, {0.4, -0.2});
    CHECK(out.v_trans == 0.0);
    CHECK(out.v_rot == 0.0);
}

TEST_CASE("large translation bias saturates forward speed") {
    std::vector<double> w(22, 0.0);
    w[8] = 1e3;  // bias of output 0
    const ControlOutput out = activate(w, std::vector<double>(8, 0.5), {});
    CHECK(std::abs(out.v_trans - 1.0) < 1e-6);
    CHECK(out.v_rot == 0.0);
}

TEST_CASE("activate agrees with an independent forward pass") {
    Rng rng(21);
    for (TaskKind task : {TaskKind::Navigation, TaskKind::Foraging}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const Genome g = random_genome(genome_length(task), rng);
            SensorReading reading;
            for (auto& v : reading.proximity) v = rng.uniform01();
            for (auto& v : reading.food) v = rng.uniform01();
            const ControlOutput prev{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const std::vector<double> in = controller_inputs(reading, task);
            REQUIRE(in.size() == input_count(task));
            const ControlOutput got = activate(g, reading, task, prev);
            const ControlOutput want = reference_forward(g.weights, in, prev);
            CHECK(std::abs(got.v_trans - want.v_trans) <= 1e-12);
            CHECK(std::abs(got.v_rot - want.v_rot) <= 1e-12);
        }
    }
}

TEST_CASE("recurrent weights read the previous output") {
    std::vector<double> w(22, 0.0);
    w[9] = 0.5;        // output 0 <- prev translation
    w[11 + 10] = 2.0;  // output 1 <- prev rotation
    const ControlOutput out = activate(w, std::vector<double>(8, 0.0), {0.6, -0.3});
    CHECK(out.v_trans == doctest::Approx(std::tanh(0.3)));
    CHECK(out.v_rot == doctest::Approx(std::tanh(-0.6)));
}

TEST_CASE("outputs stay inside (-1, 1) for unsaturated sums") {
    // tanh rounds to exactly +-1 in double precision once |sum| > ~19, so the
    // strict bound is checked with weights and inputs that keep |sum| small.
    Rng rng(23);
    for (int trial = 0; trial < 10000; ++trial) {
        const Genome g = random_genome(22, rng);
        std::vector<double> in(8);
        for (auto& v : in) v = rng.uniform01();
        const ControlOutput out = activate(g.weights, in, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
        CHECK(out.v_trans > -1.0);
        CHECK(out.v_trans < 1.0);
        CHECK(out.v_rot > -1.0);
        CHECK(out.v_rot < 1.0);
    }
    // closed interval always
    std::vector<double> big(22, 1e6);
    const ControlOutput sat = activate(big, std::vector<double>(8, 1.0), {1, 1});
    CHECK(sat.v_trans <= 1.0);
    CHECK(sat.v_rot <= 1.0);
}

TEST_CASE("activate rejects a genome of the wrong length") {
    const std::vector<double> w(38, 0.0);
    CHECK_THROWS_AS(activate(w, std::vector<double>(8, 0.0), {}), std::invalid_argument);
    Genome g;
    g.weights.assign(22, 0.0);
    CHECK_THROWS_AS(activate(g, SensorReading{}, TaskKind::Foraging, {}), std::invalid_argument);
}

TEST_CASE("activate is pure") {
    Rng rng(25);
    const Genome g = random_genome(22, rng);
    SensorReading r;
    for (auto& v : r.proximity) v = rng.uniform01();
    const ControlOutput a = activate(g, r, TaskKind::Navigation, {0.1, 0.2});
    const ControlOutput b = activate(g, r, TaskKind::Navigation, {0.1, 0.2});
    CHECK(a.v_trans == b.v_trans);
    CHECK(a.v_rot == b.v_rot);
}

TEST_CASE("mutation with a vanishing step leaves weights in place") {
    Rng rng(27);
    Genome g = random_genome(22, rng);
    g.id = 5;
    g.fitness = 3.0;
    g.evaluated = true;
    g.generation = 4;
    const Genome before = g;
    const Genome child = mutate(g, 1e-12, rng);
    for (std::size_t i = 0; i < 22; ++i) CHECK(std::abs(child.weights[i] - g.weights[i]) <= 1e-9);
    CHECK(child.weights.size() == 22);
    CHECK_FALSE(child.evaluated);
    CHECK(child.fitness == 0.0);
    CHECK(child.generation == 5);
    CHECK(child.parent_id == 5);
    // source untouched
    CHECK(g.weights == before.weights);
    CHECK(g.evaluated);
}

TEST_CASE("mutation noise has the requested mean and spread") {
    Rng rng(29);
    Genome zero;
    zero.weights.assign(22, 0.0);
    constexpr int kDraws = 100000;
    std::vector<double> sum(22, 0.0), sum2(22, 0.0);
    for (int i = 0; i < kDraws; ++i) {
        const Genome m = mutate(zero, 0.5, rng);
        REQUIRE(m.weights.size() == 22);
        for (std::size_t k = 0; k < 22; ++k) {
            sum[k] += m.weights[k];
            sum2[k] += m.weights[k] * m.weights[k];
        }
    }
    for (std::size_t k = 0; k < 22; ++k) {
        const double mean = sum[k] / kDraws;
        const double sd = std::sqrt(sum2[k] / kDraws - mean * mean);
        CHECK(std::abs(mean) < 0.01);
        CHECK(std::abs(sd - 0.5) < 0.01);
    }
}

TEST_CASE("random genomes") {
    Rng a(31), b(31);
    const Genome ga = random_genome(22, a);
    const Genome gb = random_genome(22, b);
    CHECK(ga.weights.size() == 22);
    CHECK(ga.weights == gb.weights);
    CHECK_FALSE(ga.evaluated);
    for (double w : ga.weights) {
        CHECK(w >= -1.0);
        CHECK(w <= 1.0);
    }
    CHECK(random_genome(38, a).weights.size() == 38);

    Rng rng(33);
    double sum = 0.0, lo = 1.0, hi = -1.0;
    for (int i = 0; i < 100000; ++i) {
        const double w = random_genome(22, rng).weights[0];
        sum += w;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    CHECK(std::abs(sum / 100000) < 0.02);
    CHECK(lo >= -1.0);
    CHECK(lo <= -0.99);
    CHECK(hi >= 0.99);
    CHECK(hi <= 1.0);
}
