#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "swarmsel/config.hpp"

using namespace swarmsel;

namespace {

ConfigError config_error(const std::string& text) {
    try {
        parse_config(text, "test.cfg");
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("", "");
}

}  // namespace

TEST_CASE("a file without a task is rejected, otherwise paper defaults apply") {
    CHECK(config_error("").key() == "task");
    CHECK(config_error("# only a comment\n\n").key() == "task");

    const ExperimentConfig c = parse_config("task navigation\n");
    CHECK(c.sim.task == TaskKind::Navigation);
    CHECK(c.sim.swarm_size == 50);
    CHECK(c.sim.sim_steps == 500000);
    CHECK(c.sim.t_e_base == 2000);
    CHECK(c.sim.t_e_jitter == 500);
    CHECK(c.sim.t_l == 200);
    CHECK(c.sim.sigma == 0.5);
    CHECK(c.sim.food_items == 150);
    CHECK(c.sim.tournament_k == 2);
    CHECK(c.runs_per_method == 30);
    CHECK(c.methods.size() == 4);
    CHECK(c.measures.tail_fraction == 0.08);
    CHECK(c.measures.budget_fraction == 0.92);
    CHECK(c.measures.target_fraction == 0.8);
    CHECK(c.sim.arena.obstacles.size() == 4);
}

TEST_CASE("range violations name the key and its line") {
    const ConfigError e = config_error("task foraging\n# comment\nsigma -1\n");
    CHECK(e.key() == "sigma");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("test.cfg:3") != std::string::npos);

    CHECK(config_error("task navigation\nswarm_size 0\n").key() == "swarm_size");
    CHECK(config_error("task navigation\nruns_per_method 0\n").key() == "runs_per_method");
    CHECK(config_error("task navigation\ntail_fraction 1.5\n").key() == "tail_fraction");
    CHECK(config_error("task navigation\nmethods best best\n").key() == "methods");
    CHECK(config_error("task swimming\n").key() == "task");
    CHECK(config_error("task navigation\nmethods roulette\n").key() == "methods");
}

TEST_CASE("unknown, repeated and malformed keys are errors") {
    const ConfigError unknown = config_error("task navigation\nswarmsize 50\n");
    CHECK(unknown.key() == "swarmsize");
    CHECK(unknown.line() == 2);

    const ConfigError repeated = config_error("task navigation\nsigma 0.5\nsigma 0.4\n");
    CHECK(repeated.key() == "sigma");
    CHECK(repeated.line() == 3);

    CHECK(config_error("task navigation\nswarm_size fifty\n").key() == "swarm_size");
    CHECK(config_error("task navigation\nswarm_size 5 6\n").key() == "swarm_size");
    CHECK(config_error("task navigation\nobstacle 1 2 3\n").key() == "obstacle");
}

TEST_CASE("Table 1 values survive a save/load cycle") {
    const ExperimentConfig c =
        parse_config("task foraging\nswarm_size 50\nfood_items 150\nmethods rank, best\nsigma 0.3\nseed 77\n");
    CHECK(c.methods == std::vector<SelectionMethod>{SelectionMethod::Rank, SelectionMethod::Best});
    const std::string text = to_config_text(c);
    const ExperimentConfig back = parse_config(text);
    CHECK(to_config_text(back) == text);
    CHECK(back.sim.swarm_size == 50);
    CHECK(back.sim.food_items == 150);
    CHECK(back.sim.sigma == 0.3);
    CHECK(back.seed == 77);
    CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("awkward doubles round-trip bit for bit") {
    ExperimentConfig c = parse_config("task navigation\n");
    c.sim.sigma = 0.1 + 0.2;
    c.sim.arena.theta_max = 0.39269908169872414;
    c.sim.arena.obstacles = {{{0.1, 1.0 / 3.0}, {2.0 / 7.0, 999.999}}};
    const ExperimentConfig back = parse_config(to_config_text(c));
    CHECK(back.sim.sigma == c.sim.sigma);
    CHECK(back.sim.arena.obstacles[0].a.y == c.sim.arena.obstacles[0].a.y);
    CHECK(back.sim.arena.obstacles[0].b.x == c.sim.arena.obstacles[0].b.x);
}

TEST_CASE("inline obstacles replace the default layout") {
    const ExperimentConfig c = parse_config("task navigation\nobstacle 10 10 20 20\nobstacle 30,30,40,40\n");
    REQUIRE(c.sim.arena.obstacles.size() == 2);
    CHECK(c.sim.arena.obstacles[1].b.y == 40);

    const ExperimentConfig none = parse_config("task navigation\nobstacle none\n");
    CHECK(none.sim.arena.obstacles.empty());
    CHECK(to_config_text(none).find("obstacle none") != std::string::npos);
    CHECK(parse_config(to_config_text(none)).sim.arena.obstacles.empty());
}

TEST_CASE("arena files") {
    const auto dir = std::filesystem::temp_directory_path() / "swarmsel_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "room.arena") << "# a small room\nwidth 400\nheight 300\nobstacle 100 100 200 100\n";
        std::ofstream(dir / "exp.cfg") << "task navigation\narena_file room.arena\n";
        std::ofstream(dir / "bad.arena") << "width 400\ndepth 3\n";
        std::ofstream(dir / "bad.cfg") << "task navigation\narena_file bad.arena\n";
    }
    const ExperimentConfig c = load_config(dir / "exp.cfg");
    CHECK(c.sim.arena.width == 400);
    CHECK(c.sim.arena.height == 300);
    REQUIRE(c.sim.arena.obstacles.size() == 1);
    CHECK(c.sim.arena.obstacles[0].b.x == 200);

    try {
        load_config(dir / "bad.cfg");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "depth");
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("the shipped configs load") {
    for (const char* name : {"desk_navigation.cfg", "desk_foraging.cfg", "paper_navigation.cfg", "paper_foraging.cfg"})
        CHECK_NOTHROW(load_config(std::filesystem::path(SWARMSEL_TEST_DATA) / name));
}

TEST_CASE("hash is stable and sensitive") {
    const ExperimentConfig a = parse_config("task navigation\n");
    const ExperimentConfig b = parse_config("# same thing\ntask   navigation\nsigma 0.5\n");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    const ExperimentConfig c = parse_config("task navigation\nsigma 0.25\n");
    CHECK(config_hash(a) != config_hash(c));
}
