#include "swarmsel/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace swarmsel {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ConfigError(field, what);
}

}  // namespace

void validate(const SimulationConfig& c) {
    require(c.swarm_size >= 1, "swarm_size", "must be >= 1");
    require(c.sim_steps >= 0, "sim_steps", "must be >= 0");
    require(c.max_generations >= 0, "max_generations", "must be >= 0");
    require(c.t_e_base >= 1, "t_e_base", "must be >= 1");
    require(c.t_e_jitter >= 0 && c.t_e_jitter < c.t_e_base, "t_e_jitter", "must lie in [0, t_e_base)");
    require(c.t_l >= 0, "t_l", "must be >= 0");
    require(c.sigma > 0.0 && std::isfinite(c.sigma), "sigma", "must be > 0");
    require(c.food_items >= 0, "food_items", "must be >= 0");
    require(c.tournament_k >= 1, "tournament_k", "must be >= 1");
    require(c.comm_radius > 0.0, "comm_radius", "must be > 0");
    const ArenaParams& a = c.arena;
    require(a.width > 0.0 && std::isfinite(a.width), "arena_width", "must be > 0");
    require(a.height > 0.0 && std::isfinite(a.height), "arena_height", "must be > 0");
    require(a.agent_radius > 0.0, "agent_radius", "must be > 0");
    require(a.food_radius > 0.0, "food_radius", "must be > 0");
    require(a.sensor_range > 0.0, "sensor_range", "must be > 0");
    require(a.v_max > 0.0, "v_max", "must be > 0");
    require(a.theta_max > 0.0 && a.theta_max <= std::numbers::pi, "theta_max", "must lie in (0, pi]");
    require(2.0 * a.agent_radius < std::min(a.width, a.height), "agent_radius", "agent does not fit in the arena");
    for (const Segment& s : a.obstacles) {
        require(std::isfinite(s.a.x) && std::isfinite(s.a.y) && std::isfinite(s.b.x) && std::isfinite(s.b.y),
                "obstacle", "coordinates must be finite");
    }
}

void AgentState::receive(const Broadcast& message) { receive(message.sender_id, message.genome, message.fitness); }

void AgentState::receive(int sender_id, const Genome& genome, double fitness) {
    for (std::size_t i = 0; i < local_senders.size(); ++i) {
        if (local_senders[i] != sender_id) continue;
        LocalEntry& e = local_list[i];
        if (e.genome.id != genome.id || genome.id == 0) e.genome = genome;
        e.fitness = fitness;
        return;
    }
    local_list.push_back({genome, fitness});
    local_senders.push_back(sender_id);
}

void begin_evaluation(AgentState& agent, const SimulationConfig& config, Rng& rng) {
    const int jitter = config.t_e_jitter > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(config.t_e_jitter))) : 0;
    agent.current_t_e = config.t_e_base - jitter;
    agent.phase = Phase::Evaluating;
    agent.phase_steps_left = agent.current_t_e;
    agent.phase_steps_done = 0;
    agent.initial_offset = 0;
    agent.fitness_accum = 0.0;
    agent.prev_output = {};
    agent.local_list.clear();
    agent.local_senders.clear();
}

std::size_t finish_generation(AgentState& agent, const SimulationConfig& config, Rng& rng,
                              std::uint64_t child_id, SwarmObserver* observer, std::int64_t step) {
    Genome own = agent.active_genome;
    own.fitness = agent.fitness_accum;
    own.evaluated = true;
    agent.local_list.push_back({std::move(own), agent.fitness_accum});
    agent.local_senders.push_back(agent.id);

    const std::size_t chosen =
        select(config.method, agent.local_list, static_cast<std::size_t>(config.tournament_k), rng);
    Genome child = mutate(agent.local_list[chosen].genome, config.sigma, rng);
    child.id = child_id;
    if (observer) observer->on_selection(step, agent, agent.local_list, chosen, child);

    agent.active_genome = std::move(child);
    agent.fitness_history.push_back(agent.fitness_accum);
    ++agent.generation_index;
    agent.local_list.clear();
    agent.local_senders.clear();
    return chosen;
}

Swarm::Swarm(SimulationConfig config, std::uint64_t seed)
    : config_(std::move(config)), arena_((validate(config_), config_.arena)), rng_(seed), seed_(seed) {
    if (config_.task == TaskKind::Foraging) arena_.scatter_food(static_cast<std::size_t>(config_.food_items), rng_);

    const double r = config_.arena.agent_radius;
    const std::size_t n = static_cast<std::size_t>(config_.swarm_size);
    const std::size_t length = genome_length(config_.task);
    agents_.resize(n);
    poses_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        AgentState& a = agents_[i];
        a.id = static_cast<int>(i);

        // Non-overlapping start positions.
        Vec2 p{};
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt >= Arena::kMaxPlacementAttempts)
                throw ConfigError("swarm_size", "could not place all agents without overlap");
            p = arena_.random_valid_position(rng_, r);
            bool clear = true;
            for (std::size_t j = 0; j < i && clear; ++j) {
                const double dx = poses_[j].x - p.x;
                const double dy = poses_[j].y - p.y;
                clear = dx * dx + dy * dy >= 4.0 * r * r;
            }
            if (clear) break;
        }
        a.pose = {p.x, p.y, rng_.uniform(-std::numbers::pi, std::numbers::pi)};
        poses_[i] = a.pose;

        a.active_genome = random_genome(length, rng_);
        a.active_genome.id = next_genome_id();
        a.active_genome.origin_agent = a.id;

        // Desynchronise: the first evaluation starts part-way through.
        begin_evaluation(a, config_, rng_);
        a.initial_offset = static_cast<int>(rng_.below(static_cast<std::uint64_t>(a.current_t_e)));
        a.phase_steps_left = a.current_t_e - a.initial_offset;
    }
}

void Swarm::set_pose(std::size_t i, const Pose& pose) {
    agents_[i].pose = pose;
    poses_[i] = pose;
}

void Swarm::step() {
    const std::size_t n = agents_.size();
    const bool navigation = config_.task == TaskKind::Navigation;

    // Phases and poses as of the start of the step.
    thread_local std::vector<Pose> start;
    thread_local std::vector<Phase> phase;
    start.assign(poses_.begin(), poses_.end());
    phase.resize(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = agents_[i].phase;

    for (std::size_t i = 0; i < n; ++i) {
        if (phase[i] != Phase::Evaluating) continue;
        AgentState& a = agents_[i];
        const SensorReading reading = sense(arena_, start, i, config_.task);
        const ControlOutput out = activate(a.active_genome, reading, config_.task, a.prev_output);
        a.pose = step_kinematics(arena_, a.pose, out.v_trans, out.v_rot);
        poses_[i] = a.pose;
        a.prev_output = out;
        if (navigation)
            a.fitness_accum += navigation_step_fitness(out.v_trans, out.v_rot, reading.proximity);
        else
            a.fitness_accum += foraging_step_fitness(collect_food(arena_, a.pose, rng_));
    }

    // Evaluating agents broadcast to listening agents in range.
    const double r2 = config_.comm_radius * config_.comm_radius;
    for (std::size_t s = 0; s < n; ++s) {
        if (phase[s] != Phase::Evaluating) continue;
        const AgentState& sender = agents_[s];
        for (std::size_t j = 0; j < n; ++j) {
            if (phase[j] != Phase::Listening) continue;
            const double dx = poses_[j].x - poses_[s].x;
            const double dy = poses_[j].y - poses_[s].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > r2) continue;
            agents_[j].receive(sender.id, sender.active_genome, sender.fitness_accum);
            if (observer_) observer_->on_broadcast(step_, sender, agents_[j], std::sqrt(d2));
        }
    }

    for (AgentState& a : agents_) {
        --a.phase_steps_left;
        ++a.phase_steps_done;
        if (a.phase_steps_left > 0) continue;
        if (observer_) observer_->on_phase_end(step_, a, a.phase, a.phase_steps_done);
        if (a.phase == Phase::Evaluating && config_.t_l > 0) {
            a.phase = Phase::Listening;
            a.phase_steps_left = config_.t_l;
            a.phase_steps_done = 0;
        } else {
            finish_generation(a, config_, rng_, next_genome_id(), observer_, step_);
            begin_evaluation(a, config_, rng_);
        }
    }

    if (observer_) observer_->on_step_end(step_, agents_);
    ++step_;
}

bool Swarm::finished() const {
    if (step_ >= config_.sim_steps) return true;
    if (config_.max_generations <= 0) return false;
    for (const AgentState& a : agents_)
        if (a.fitness_history.size() < static_cast<std::size_t>(config_.max_generations)) return false;
    return true;
}

void Swarm::run() {
    while (!finished()) step();
}

std::size_t Swarm::common_generations() const {
    std::size_t g = std::numeric_limits<std::size_t>::max();
    for (const AgentState& a : agents_) g = std::min(g, a.fitness_history.size());
    if (agents_.empty()) g = 0;
    if (config_.max_generations > 0) g = std::min(g, static_cast<std::size_t>(config_.max_generations));
    return g;
}

RunTrace Swarm::trace() const {
    RunTrace t;
    t.method = std::string(to_token(config_.method));
    t.seed = seed_;
    const std::size_t g_count = common_generations();
    t.swarm_fitness.reserve(g_count);
    std::vector<double> column(agents_.size());
    for (std::size_t g = 0; g < g_count; ++g) {
        for (std::size_t r = 0; r < agents_.size(); ++r) column[r] = agents_[r].fitness_history[g];
        t.swarm_fitness.push_back(swarm_fitness(column));
    }
    return t;
}

RunTrace run_simulation(const SimulationConfig& config, std::uint64_t seed, SwarmObserver* observer) {
    Swarm swarm(config, seed);
    swarm.set_observer(observer);
    swarm.run();
    return swarm.trace();
}

}  // namespace swarmsel
