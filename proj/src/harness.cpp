#include "swarmsel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "swarmsel/evolution.hpp"
#include "swarmsel/rng.hpp"

namespace swarmsel {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write to a temporary sibling, then rename over the target.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string comment_block(const std::string& config_hash_hex, const std::string& task, const std::string& config_text) {
    std::string out = "# config_hash " + config_hash_hex + "\n# task " + task + "\n";
    std::istringstream lines(config_text);
    for (std::string line; std::getline(lines, line);) out += "# config " + line + "\n";
    return out;
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
T to_number(std::string_view token, const std::string& origin) {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw std::runtime_error(origin + ": bad number '" + std::string(token) + "'");
    return value;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view method, int run_index) {
    const std::uint64_t per_method = mix64(mix64(master_seed) ^ fnv1a(method));
    return mix64(per_method + static_cast<std::uint64_t>(run_index));
}

std::string format_record(const RunRecord& r, const std::string& config_text) {
    std::ostringstream out;
    out << "# swarmsel run record\n";
    std::istringstream lines(config_text);
    for (std::string line; std::getline(lines, line);) out << "# config " << line << '\n';
    out << "config_hash " << r.config_hash << '\n';
    out << "method " << r.method << '\n';
    out << "run " << r.run << '\n';
    out << "seed " << r.seed << '\n';
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_seconds);
    out << "wall_seconds " << wall << '\n';
    out << "generations " << r.trace.swarm_fitness.size() << '\n';
    for (double v : r.trace.swarm_fitness) out << "fs " << format_exact(v) << '\n';
    return out.str();
}

RunRecord parse_record(std::string_view text, const std::string& origin) {
    RunRecord r;
    std::optional<std::size_t> generations;
    std::istringstream lines{std::string(text)};
    for (std::string line; std::getline(lines, line);) {
        if (line.empty() || line[0] == '#') continue;
        const auto space = line.find(' ');
        if (space == std::string::npos) throw std::runtime_error(origin + ": malformed line '" + line + "'");
        const std::string key = line.substr(0, space);
        const std::string value = line.substr(space + 1);
        if (key == "config_hash") r.config_hash = value;
        else if (key == "method") r.method = value;
        else if (key == "run") r.run = to_number<int>(value, origin);
        else if (key == "seed") r.seed = to_number<std::uint64_t>(value, origin);
        else if (key == "wall_seconds") r.wall_seconds = to_number<double>(value, origin);
        else if (key == "generations") generations = to_number<std::size_t>(value, origin);
        else if (key == "fs") r.trace.swarm_fitness.push_back(to_number<double>(value, origin));
        else throw std::runtime_error(origin + ": unknown record key '" + key + "'");
    }
    if (r.config_hash.empty() || r.method.empty() || !generations)
        throw std::runtime_error(origin + ": incomplete record");
    if (*generations != r.trace.swarm_fitness.size())
        throw std::runtime_error(origin + ": truncated record");
    r.trace.method = r.method;
    r.trace.seed = r.seed;
    return r;
}

fs::path record_path(const fs::path& out_dir, std::string_view method, int run) {
    char name[64];
    std::snprintf(name, sizeof name, "%.*s_run%03d.rec", static_cast<int>(method.size()), method.data(), run);
    return out_dir / "records" / name;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    const std::string text = to_config_text(config);
    const std::string hash = config_hash(config);

    fs::create_directories(options.out_dir / "records");
    const fs::path resolved = options.out_dir / "config.resolved";
    if (fs::exists(resolved)) {
        const ExperimentConfig existing = load_config(resolved);
        if (config_hash(existing) != hash)
            throw ConfigError("", "output directory '" + options.out_dir.string() +
                                      "' holds results of a different configuration");
    }
    write_file_atomic(resolved, text);

    struct Cell {
        SelectionMethod method;
        int run;
    };
    std::vector<Cell> cells;
    for (SelectionMethod m : config.methods)
        for (int i = 0; i < config.runs_per_method; ++i) cells.push_back({m, i});

    ExperimentResult result;
    std::vector<std::optional<RunRecord>> slots(cells.size());
    std::vector<std::size_t> pending;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string token(to_token(cells[c].method));
        const fs::path path = record_path(options.out_dir, token, cells[c].run);
        if (!fs::exists(path)) {
            pending.push_back(c);
            continue;
        }
        try {
            RunRecord r = parse_record(read_file(path), path.string());
            if (r.config_hash == hash && r.method == token && r.run == cells[c].run) {
                if (options.on_record) options.on_record(r, true);
                slots[c] = std::move(r);
                ++result.resumed;
                continue;
            }
        } catch (const std::exception&) {
            // unreadable or partial record: recompute it
        }
        pending.push_back(c);
    }

    std::mutex collector;
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pending.size()) return;
            const Cell& cell = cells[pending[k]];
            const std::string token(to_token(cell.method));
            RunRecord r;
            r.config_hash = hash;
            r.method = token;
            r.run = cell.run;
            r.seed = derive_seed(config.seed, token, cell.run);
            try {
                const auto t0 = std::chrono::steady_clock::now();
                r.trace = run_simulation(config.for_method(cell.method), r.seed);
                r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                std::lock_guard lock(collector);
                write_file_atomic(record_path(options.out_dir, token, cell.run), format_record(r, text));
                if (options.on_record) options.on_record(r, false);
                slots[pending[k]] = std::move(r);
            } catch (const std::exception& e) {
                std::lock_guard lock(collector);
                result.failures.push_back({token, cell.run, e.what()});
            }
        }
    };

    unsigned jobs = options.jobs != 0 ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(pending.size(), 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (auto& s : slots)
        if (s) result.records.push_back(std::move(*s));
    std::sort(result.failures.begin(), result.failures.end(), [](const CellFailure& a, const CellFailure& b) {
        return std::tie(a.method, a.run) < std::tie(b.method, b.run);
    });
    return result;
}

LoadedExperiment load_experiment(const fs::path& dir) {
    LoadedExperiment out;
    if (!fs::exists(dir / "config.resolved"))
        throw std::runtime_error("'" + dir.string() + "' is not an experiment directory (no config.resolved)");
    out.config = load_config(dir / "config.resolved");
    out.config_hash = config_hash(out.config);

    std::vector<fs::path> files;
    if (fs::exists(dir / "records"))
        for (const auto& entry : fs::directory_iterator(dir / "records"))
            if (entry.is_regular_file() && entry.path().extension() == ".rec") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
        RunRecord r = parse_record(read_file(f), f.string());
        if (r.config_hash != out.config_hash)
            throw std::runtime_error(f.string() + ": config hash " + r.config_hash + " does not match " +
                                     out.config_hash + "; refusing to mix experiments");
        out.records.push_back(std::move(r));
    }
    // Config method order, then run index.
    std::vector<std::string> order;
    for (SelectionMethod m : out.config.methods) order.emplace_back(to_token(m));
    const auto rank = [&](const std::string& m) {
        return static_cast<std::size_t>(std::find(order.begin(), order.end(), m) - order.begin());
    };
    std::sort(out.records.begin(), out.records.end(), [&](const RunRecord& a, const RunRecord& b) {
        return std::make_pair(rank(a.method), a.run) < std::make_pair(rank(b.method), b.run);
    });
    return out;
}

std::vector<double> Analysis::measure_values(const std::string& method, const std::string& measure) const {
    std::vector<double> out;
    for (const MeasureRow& row : measures) {
        if (row.method != method) continue;
        const MeasureSet& m = row.measures;
        if (measure == "f_c") out.push_back(m.f_c);
        else if (measure == "f_b") out.push_back(m.f_b);
        else if (measure == "g_f") out.push_back(static_cast<double>(m.g_f));
        else if (measure == "f_a") out.push_back(m.f_a);
        else throw std::invalid_argument("unknown measure '" + measure + "'");
    }
    return out;
}

Analysis analyze(const std::vector<RunRecord>& records, const ExperimentConfig& config) {
    Analysis a;
    a.task = std::string(to_token(config.sim.task));
    a.config_hash = config_hash(config);

    std::map<std::string, std::vector<const RunRecord*>> by_method;
    for (const RunRecord& r : records) {
        if (r.trace.swarm_fitness.empty()) {
            a.warnings.push_back(r.method + " run " + std::to_string(r.run) + " has an empty trace; skipped");
            continue;
        }
        by_method[r.method].push_back(&r);
    }
    for (SelectionMethod m : config.methods) {
        const std::string token(to_token(m));
        if (by_method.count(token))
            a.methods.push_back(token);
        else
            a.warnings.push_back("no records for method " + token);
    }

    std::vector<std::vector<double>> all_traces;
    for (const auto& [method, runs] : by_method)
        for (const RunRecord* r : runs) all_traces.push_back(r->trace.swarm_fitness);
    a.target = compute_target(all_traces, config.measures.target_fraction);

    for (const std::string& method : a.methods) {
        std::vector<std::vector<double>> traces;
        for (const RunRecord* r : by_method[method]) {
            a.measures.push_back({method, r->run, compute_measures(r->trace.swarm_fitness, a.target, config.measures)});
            traces.push_back(r->trace.swarm_fitness);
        }
        a.median_curves[method] = median_curve(traces);
    }

    for (std::size_t i = 0; i < a.methods.size(); ++i) {
        for (std::size_t j = i + 1; j < a.methods.size(); ++j) {
            const std::string& ma = a.methods[i];
            const std::string& mb = a.methods[j];
            if (by_method[ma].size() < 2 || by_method[mb].size() < 2) {
                a.warnings.push_back("fewer than two runs for " + ma + " or " + mb + "; no test for this pair");
                continue;
            }
            for (const std::string& measure : kMeasureNames)
                a.comparisons.push_back({ma, mb, measure,
                                         mann_whitney_u(a.measure_values(ma, measure), a.measure_values(mb, measure))});
        }
    }
    return a;
}

std::string format_decimal(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string measures_csv(const Analysis& a, const std::string& config_text) {
    std::string out = comment_block(a.config_hash, a.task, config_text);
    out += "method,run,f_c,f_b,g_f,f_a\n";
    for (const MeasureRow& row : a.measures) {
        out += row.method + "," + std::to_string(row.run) + "," + format_decimal(row.measures.f_c) + "," +
               format_decimal(row.measures.f_b) + "," + std::to_string(row.measures.g_f) + "," +
               format_decimal(row.measures.f_a) + "\n";
    }
    return out;
}

std::string comparison_csv(const Analysis& a, const std::string& config_text) {
    std::string out = comment_block(a.config_hash, a.task, config_text);
    out += "method_a,method_b,measure,U,p,significant\n";
    for (const ComparisonCell& c : a.comparisons) {
        out += c.method_a + "," + c.method_b + "," + c.measure + "," + format_decimal(c.test.u) + "," +
               format_decimal(c.test.p) + "," + (c.test.significant() ? "true" : "false") + "\n";
    }
    return out;
}

std::string curves_csv(const Analysis& a, const std::string& config_text) {
    std::string out = comment_block(a.config_hash, a.task, config_text);
    out += "generation";
    std::size_t rows = 0;
    bool first = true;
    for (const std::string& m : a.methods) {
        out += "," + m;
        const std::size_t len = a.median_curves.at(m).size();
        rows = first ? len : std::min(rows, len);
        first = false;
    }
    out += "\n";
    for (std::size_t g = 0; g < rows; ++g) {
        out += std::to_string(g);
        for (const std::string& m : a.methods) out += "," + format_decimal(a.median_curves.at(m)[g]);
        out += "\n";
    }
    return out;
}

std::vector<fs::path> write_analysis(const Analysis& analysis, const ExperimentConfig& config, const fs::path& out_dir) {
    const std::string text = to_config_text(config);
    fs::create_directories(out_dir);
    const fs::path comparison = out_dir / ("comparison_" + analysis.task + ".csv");
    const fs::path measures = out_dir / ("measures_" + analysis.task + ".csv");
    write_file_atomic(comparison, comparison_csv(analysis, text));
    write_file_atomic(measures, measures_csv(analysis, text));
    return {comparison, measures};
}

std::vector<fs::path> emit_plot_data(const Analysis& analysis, const ExperimentConfig& config, const fs::path& out_dir) {
    if (analysis.measures.empty()) throw std::runtime_error("no records to emit plot data for");
    const std::string text = to_config_text(config);
    fs::create_directories(out_dir);
    const fs::path curves = out_dir / ("curves_" + analysis.task + ".csv");
    const fs::path measures = out_dir / ("measures_" + analysis.task + ".csv");
    write_file_atomic(curves, curves_csv(analysis, text));
    write_file_atomic(measures, measures_csv(analysis, text));
    return {curves, measures};
}

}  // namespace swarmsel
