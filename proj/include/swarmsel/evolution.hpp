#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsel/arena.hpp"
#include "swarmsel/neuro.hpp"
#include "swarmsel/rng.hpp"
#include "swarmsel/selection.hpp"
#include "swarmsel/tasks.hpp"

namespace swarmsel {

// Everything one run needs. Defaults are the paper-scale settings.
struct SimulationConfig {
    TaskKind task = TaskKind::Navigation;
    SelectionMethod method = SelectionMethod::Random;
    int swarm_size = 50;
    std::int64_t sim_steps = 500000;
    int max_generations = 0;  // 0 = no cap; otherwise stop once every agent has this many
    int t_e_base = 2000;
    int t_e_jitter = 500;     // evaluation lasts t_e_base - U{0 .. jitter-1}
    int t_l = 200;
    double sigma = 0.5;
    int food_items = 150;
    int tournament_k = 2;
    double comm_radius = 64.0;
    ArenaParams arena;
};

// Invalid configuration value. `key` names the offending setting; `line` is
// the 1-based line of the config file when known, else 0.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message, int line = 0, const std::string& file = {})
        : std::runtime_error(format(key, message, line, file)), key_(std::move(key)), message_(message), line_(line) {}

    const std::string& key() const { return key_; }
    const std::string& message() const { return message_; }
    int line() const { return line_; }

private:
    static std::string format(const std::string& key, const std::string& message, int line, const std::string& file) {
        std::string out;
        if (!file.empty()) out += file + ":";
        if (line > 0) out += std::to_string(line) + ":";
        if (!out.empty()) out += " ";
        if (!key.empty()) out += key + ": ";
        return out + message;
    }

    std::string key_;
    std::string message_;
    int line_ = 0;
};

// Throws ConfigError naming the offending field.
void validate(const SimulationConfig& config);

enum class Phase { Evaluating, Listening };

struct Broadcast {
    int sender_id = 0;
    Genome genome;
    double fitness = 0.0;
};

struct AgentState {
    int id = 0;
    Pose pose;
    Genome active_genome;
    Phase phase = Phase::Evaluating;
    int phase_steps_left = 0;
    int phase_steps_done = 0;
    int current_t_e = 0;
    int initial_offset = 0;  // steps of the first evaluation phase skipped at start-up
    double fitness_accum = 0.0;
    LocalPopulation local_list;
    std::vector<int> local_senders;  // sender id of each local_list entry
    ControlOutput prev_output;
    int generation_index = 0;
    std::vector<double> fitness_history;

    // Keeps only the latest broadcast of each sender, in first-arrival order.
    void receive(const Broadcast& message);
    void receive(int sender_id, const Genome& genome, double fitness);
};

// Hooks for instrumentation; every method defaults to a no-op.
class SwarmObserver {
public:
    virtual ~SwarmObserver() = default;
    virtual void on_broadcast(std::int64_t /*step*/, const AgentState& /*sender*/, const AgentState& /*receiver*/,
                              double /*distance*/) {}
    virtual void on_phase_end(std::int64_t /*step*/, const AgentState& /*agent*/, Phase /*ended*/,
                              int /*steps_in_phase*/) {}
    // `pool` is the local list including the agent's own entry; `chosen`
    // indexes it; `next` is the genome about to become active.
    virtual void on_selection(std::int64_t /*step*/, const AgentState& /*agent*/, const LocalPopulation& /*pool*/,
                              std::size_t /*chosen*/, const Genome& /*next*/) {}
    virtual void on_step_end(std::int64_t /*step*/, std::span<const AgentState> /*agents*/) {}
};

// Starts an evaluation phase: fresh T_e draw, zeroed fitness and recurrent
// state, empty local list.
void begin_evaluation(AgentState& agent, const SimulationConfig& config, Rng& rng);

// Appends the agent's own entry, selects, mutates, installs the child and
// records the finished generation. Returns the chosen index into the list.
std::size_t finish_generation(AgentState& agent, const SimulationConfig& config, Rng& rng,
                              std::uint64_t child_id, SwarmObserver* observer = nullptr,
                              std::int64_t step = 0);

// A swarm of agents in one arena, advanced one global step at a time.
// Agents are updated in id order; a run is fully determined by its seed.
class Swarm {
public:
    Swarm(SimulationConfig config, std::uint64_t seed);

    void set_observer(SwarmObserver* observer) { observer_ = observer; }

    void step();
    // Steps until the step budget is spent or the generation cap is met.
    void run();
    bool finished() const;

    std::int64_t steps_taken() const { return step_; }
    const SimulationConfig& config() const { return config_; }
    const Arena& arena() const { return arena_; }
    Arena& arena() { return arena_; }
    std::span<const AgentState> agents() const { return agents_; }
    AgentState& agent(std::size_t i) { return agents_[i]; }
    void set_pose(std::size_t i, const Pose& pose);

    // Completed generations common to every agent (capped by max_generations).
    std::size_t common_generations() const;
    RunTrace trace() const;

private:
    std::uint64_t next_genome_id() { return next_id_++; }

    SimulationConfig config_;
    Arena arena_;
    Rng rng_;
    std::vector<AgentState> agents_;
    std::vector<Pose> poses_;
    std::int64_t step_ = 0;
    std::uint64_t next_id_ = 1;
    std::uint64_t seed_ = 0;
    SwarmObserver* observer_ = nullptr;
};

RunTrace run_simulation(const SimulationConfig& config, std::uint64_t seed, SwarmObserver* observer = nullptr);

}  // namespace swarmsel
