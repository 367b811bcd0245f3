#include "swarmsel/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "swarmsel/rng.hpp"

namespace swarmsel {

namespace {

struct Line {
    int number = 0;
    std::string key;
    std::vector<std::string> values;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        std::string cleaned(raw);
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream words(cleaned);
        Line line;
        line.number = number;
        if (!(words >> line.key)) continue;
        for (std::string w; words >> w;) line.values.push_back(w);
        out.push_back(std::move(line));
        if (end == text.size()) break;
    }
    return out;
}

template <typename T>
T parse_number(const std::string& token, const Line& line, const std::string& origin) {
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ConfigError(line.key, "cannot parse '" + token + "' as a number", line.number, origin);
    return value;
}

const std::string& single_value(const Line& line, const std::string& origin) {
    if (line.values.size() != 1)
        throw ConfigError(line.key, "expected exactly one value, got " + std::to_string(line.values.size()),
                          line.number, origin);
    return line.values[0];
}

Segment parse_obstacle(const Line& line, const std::string& origin) {
    if (line.values.size() != 4)
        throw ConfigError(line.key, "expected four coordinates x1 y1 x2 y2", line.number, origin);
    const auto v = [&](std::size_t i) { return parse_number<double>(line.values[i], line, origin); };
    return {{v(0), v(1)}, {v(2), v(3)}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void parse_arena(std::string_view text, ArenaParams& params, const std::string& origin) {
    std::vector<Segment> obstacles;
    std::map<std::string, int> seen;
    for (const Line& line : tokenize(text)) {
        if (line.key == "obstacle") {
            obstacles.push_back(parse_obstacle(line, origin));
            continue;
        }
        if (!seen.emplace(line.key, line.number).second)
            throw ConfigError(line.key, "repeated key", line.number, origin);
        if (line.key == "width")
            params.width = parse_number<double>(single_value(line, origin), line, origin);
        else if (line.key == "height")
            params.height = parse_number<double>(single_value(line, origin), line, origin);
        else
            throw ConfigError(line.key, "unknown key in arena description", line.number, origin);
        if (!(parse_number<double>(line.values[0], line, origin) > 0.0))
            throw ConfigError(line.key, "must be > 0", line.number, origin);
    }
    params.obstacles = std::move(obstacles);
}

ExperimentConfig parse_config(std::string_view text, const std::string& origin, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::map<std::string, int> line_of;
    std::vector<Segment> inline_obstacles;
    bool have_obstacles = false;
    bool have_task = false;
    std::string arena_file;

    for (const Line& line : tokenize(text)) {
        const std::string& k = line.key;
        if (k == "obstacle") {
            if (!(line.values.size() == 1 && line.values[0] == "none"))
                inline_obstacles.push_back(parse_obstacle(line, origin));
            have_obstacles = true;
            line_of.emplace(k, line.number);
            continue;
        }
        if (!line_of.emplace(k, line.number).second)
            throw ConfigError(k, "repeated key (first set on line " + std::to_string(line_of[k]) + ")", line.number,
                              origin);

        const auto as_int = [&] { return parse_number<int>(single_value(line, origin), line, origin); };
        const auto as_double = [&] { return parse_number<double>(single_value(line, origin), line, origin); };
        SimulationConfig& s = cfg.sim;

        if (k == "task") {
            try {
                s.task = parse_task(single_value(line, origin));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(k, e.what(), line.number, origin);
            }
            have_task = true;
        } else if (k == "methods") {
            if (line.values.empty()) throw ConfigError(k, "needs at least one method", line.number, origin);
            cfg.methods.clear();
            for (const std::string& token : line.values) {
                try {
                    cfg.methods.push_back(parse_selection(token));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(k, e.what(), line.number, origin);
                }
            }
        } else if (k == "runs_per_method") cfg.runs_per_method = as_int();
        else if (k == "swarm_size") s.swarm_size = as_int();
        else if (k == "sim_steps") s.sim_steps = parse_number<std::int64_t>(single_value(line, origin), line, origin);
        else if (k == "max_generations") s.max_generations = as_int();
        else if (k == "t_e_base") s.t_e_base = as_int();
        else if (k == "t_e_jitter") s.t_e_jitter = as_int();
        else if (k == "t_l") s.t_l = as_int();
        else if (k == "sigma") s.sigma = as_double();
        else if (k == "food_items") s.food_items = as_int();
        else if (k == "tournament_k") s.tournament_k = as_int();
        else if (k == "seed") cfg.seed = parse_number<std::uint64_t>(single_value(line, origin), line, origin);
        else if (k == "arena_width") s.arena.width = as_double();
        else if (k == "arena_height") s.arena.height = as_double();
        else if (k == "arena_file") arena_file = single_value(line, origin);
        else if (k == "sensor_range") s.arena.sensor_range = as_double();
        else if (k == "v_max") s.arena.v_max = as_double();
        else if (k == "theta_max") s.arena.theta_max = as_double();
        else if (k == "comm_radius") s.comm_radius = as_double();
        else if (k == "agent_radius") s.arena.agent_radius = as_double();
        else if (k == "food_radius") s.arena.food_radius = as_double();
        else if (k == "tail_fraction") cfg.measures.tail_fraction = as_double();
        else if (k == "budget_fraction") cfg.measures.budget_fraction = as_double();
        else if (k == "target_fraction") cfg.measures.target_fraction = as_double();
        else throw ConfigError(k, "unknown key", line.number, origin);
    }

    if (!have_task) throw ConfigError("task", "required (navigation or foraging)", 0, origin);
    if (have_obstacles) cfg.sim.arena.obstacles = std::move(inline_obstacles);

    if (!arena_file.empty()) {
        const std::filesystem::path path = std::filesystem::path(arena_file).is_absolute()
                                               ? std::filesystem::path(arena_file)
                                               : base_dir / arena_file;
        std::ifstream in(path);
        if (!in) throw ConfigError("arena_file", "cannot open '" + path.string() + "'", line_of["arena_file"], origin);
        std::stringstream buf;
        buf << in.rdbuf();
        parse_arena(buf.str(), cfg.sim.arena, path.string());
    }

    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        const auto it = line_of.find(e.key());
        throw ConfigError(e.key(), e.message(), it == line_of.end() ? 0 : it->second, origin);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string(), path.parent_path());
}

void validate(const ExperimentConfig& c) {
    validate(c.sim);
    if (c.methods.empty()) throw ConfigError("methods", "needs at least one method");
    for (std::size_t i = 0; i < c.methods.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (c.methods[i] == c.methods[j])
                throw ConfigError("methods", "method '" + std::string(to_token(c.methods[i])) + "' listed twice");
    if (c.runs_per_method < 1) throw ConfigError("runs_per_method", "must be >= 1");
    const auto fraction = [](double f, const char* key) {
        if (!(f > 0.0 && f <= 1.0)) throw ConfigError(key, "must lie in (0, 1]");
    };
    fraction(c.measures.tail_fraction, "tail_fraction");
    fraction(c.measures.budget_fraction, "budget_fraction");
    fraction(c.measures.target_fraction, "target_fraction");
}

std::string to_config_text(const ExperimentConfig& c) {
    const SimulationConfig& s = c.sim;
    std::ostringstream out;
    out << "task " << to_token(s.task) << '\n';
    out << "methods";
    for (SelectionMethod m : c.methods) out << ' ' << to_token(m);
    out << '\n';
    out << "runs_per_method " << c.runs_per_method << '\n';
    out << "swarm_size " << s.swarm_size << '\n';
    out << "sim_steps " << s.sim_steps << '\n';
    out << "max_generations " << s.max_generations << '\n';
    out << "t_e_base " << s.t_e_base << '\n';
    out << "t_e_jitter " << s.t_e_jitter << '\n';
    out << "t_l " << s.t_l << '\n';
    out << "sigma " << format_double(s.sigma) << '\n';
    out << "food_items " << s.food_items << '\n';
    out << "tournament_k " << s.tournament_k << '\n';
    out << "seed " << c.seed << '\n';
    out << "arena_width " << format_double(s.arena.width) << '\n';
    out << "arena_height " << format_double(s.arena.height) << '\n';
    out << "sensor_range " << format_double(s.arena.sensor_range) << '\n';
    out << "v_max " << format_double(s.arena.v_max) << '\n';
    out << "theta_max " << format_double(s.arena.theta_max) << '\n';
    out << "comm_radius " << format_double(s.comm_radius) << '\n';
    out << "agent_radius " << format_double(s.arena.agent_radius) << '\n';
    out << "food_radius " << format_double(s.arena.food_radius) << '\n';
    out << "tail_fraction " << format_double(c.measures.tail_fraction) << '\n';
    out << "budget_fraction " << format_double(c.measures.budget_fraction) << '\n';
    out << "target_fraction " << format_double(c.measures.target_fraction) << '\n';
    if (s.arena.obstacles.empty()) out << "obstacle none\n";
    for (const Segment& seg : s.arena.obstacles) {
        out << "obstacle " << format_double(seg.a.x) << ' ' << format_double(seg.a.y) << ' ' << format_double(seg.b.x)
            << ' ' << format_double(seg.b.y) << '\n';
    }
    return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_config_text(config))));
    return buf;
}

}  // namespace swarmsel
