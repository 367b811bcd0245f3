// Python bindings for the simulator, selection operators and statistics.

#include <pybind11/functional.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "swarmsel/arena.hpp"
#include "swarmsel/config.hpp"
#include "swarmsel/evolution.hpp"
#include "swarmsel/harness.hpp"
#include "swarmsel/metrics.hpp"
#include "swarmsel/neuro.hpp"
#include "swarmsel/selection.hpp"

namespace py = pybind11;
using namespace swarmsel;

namespace {

py::dict measures_dict(const MeasureSet& m) {
    py::dict d;
    d["f_c"] = m.f_c;
    d["f_b"] = m.f_b;
    d["g_f"] = m.g_f;
    d["f_a"] = m.f_a;
    return d;
}

py::dict analysis_dict(const Analysis& a) {
    py::dict d;
    d["task"] = a.task;
    d["config_hash"] = a.config_hash;
    d["methods"] = a.methods;
    d["target"] = a.target;
    py::list rows;
    for (const MeasureRow& r : a.measures) {
        py::dict row = measures_dict(r.measures);
        row["method"] = r.method;
        row["run"] = r.run;
        rows.append(row);
    }
    d["measures"] = rows;
    py::list tests;
    for (const ComparisonCell& c : a.comparisons) {
        py::dict t;
        t["method_a"] = c.method_a;
        t["method_b"] = c.method_b;
        t["measure"] = c.measure;
        t["u"] = c.test.u;
        t["p"] = c.test.p;
        t["significant"] = c.test.significant();
        tests.append(t);
    }
    d["comparisons"] = tests;
    d["median_curves"] = a.median_curves;
    d["warnings"] = a.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Distributed on-line evolution of swarm controllers";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ArenaError>(m, "ArenaError", PyExc_RuntimeError);

    py::enum_<TaskKind>(m, "TaskKind")
        .value("navigation", TaskKind::Navigation)
        .value("foraging", TaskKind::Foraging);
    py::enum_<SelectionMethod>(m, "SelectionMethod")
        .value("best", SelectionMethod::Best)
        .value("rank", SelectionMethod::Rank)
        .value("tournament", SelectionMethod::Tournament)
        .value("random", SelectionMethod::Random);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform01", &Rng::uniform01)
        .def("normal", py::overload_cast<>(&Rng::normal))
        .def("below", &Rng::below);

    py::class_<ArenaParams>(m, "ArenaParams")
        .def(py::init<>())
        .def_readwrite("width", &ArenaParams::width)
        .def_readwrite("height", &ArenaParams::height)
        .def_property(
            "obstacles",
            [](const ArenaParams& p) {
                std::vector<std::array<double, 4>> out;
                for (const Segment& s : p.obstacles) out.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
                return out;
            },
            [](ArenaParams& p, const std::vector<std::array<double, 4>>& segs) {
                p.obstacles.clear();
                for (const auto& s : segs) p.obstacles.push_back({{s[0], s[1]}, {s[2], s[3]}});
            })
        .def_readwrite("agent_radius", &ArenaParams::agent_radius)
        .def_readwrite("food_radius", &ArenaParams::food_radius)
        .def_readwrite("sensor_range", &ArenaParams::sensor_range)
        .def_readwrite("v_max", &ArenaParams::v_max)
        .def_readwrite("theta_max", &ArenaParams::theta_max);

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("task", &SimulationConfig::task)
        .def_readwrite("method", &SimulationConfig::method)
        .def_readwrite("swarm_size", &SimulationConfig::swarm_size)
        .def_readwrite("sim_steps", &SimulationConfig::sim_steps)
        .def_readwrite("max_generations", &SimulationConfig::max_generations)
        .def_readwrite("t_e_base", &SimulationConfig::t_e_base)
        .def_readwrite("t_e_jitter", &SimulationConfig::t_e_jitter)
        .def_readwrite("t_l", &SimulationConfig::t_l)
        .def_readwrite("sigma", &SimulationConfig::sigma)
        .def_readwrite("food_items", &SimulationConfig::food_items)
        .def_readwrite("tournament_k", &SimulationConfig::tournament_k)
        .def_readwrite("comm_radius", &SimulationConfig::comm_radius)
        .def_readwrite("arena", &SimulationConfig::arena)
        .def("validate", [](const SimulationConfig& c) { validate(c); });

    py::class_<MeasureParams>(m, "MeasureParams")
        .def(py::init<>())
        .def_readwrite("tail_fraction", &MeasureParams::tail_fraction)
        .def_readwrite("budget_fraction", &MeasureParams::budget_fraction)
        .def_readwrite("target_fraction", &MeasureParams::target_fraction);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("sim", &ExperimentConfig::sim)
        .def_readwrite("methods", &ExperimentConfig::methods)
        .def_readwrite("runs_per_method", &ExperimentConfig::runs_per_method)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("measures", &ExperimentConfig::measures)
        .def("for_method", &ExperimentConfig::for_method)
        .def("to_text", [](const ExperimentConfig& c) { return to_config_text(c); })
        .def("hash", [](const ExperimentConfig& c) { return config_hash(c); });

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));

    // simulation
    m.def(
        "run_simulation",
        [](const SimulationConfig& c, std::uint64_t seed) {
            py::gil_scoped_release release;
            return run_simulation(c, seed).swarm_fitness;
        },
        py::arg("config"), py::arg("seed"), "Per-generation swarm fitness of one run.");

    m.def(
        "sense",
        [](double x, double y, double heading, const std::vector<std::array<double, 2>>& others, TaskKind task,
           const ArenaParams& params, const std::vector<std::array<double, 2>>& food) {
            Arena arena(params);
            std::vector<Vec2> items;
            for (const auto& f : food) items.push_back({f[0], f[1]});
            arena.set_food(std::move(items));
            std::vector<Pose> poses;
            for (const auto& o : others) poses.push_back({o[0], o[1], 0.0});
            const SensorReading r = sense(arena, Pose{x, y, heading}, poses, task);
            return std::make_pair(r.proximity, r.food);
        },
        py::arg("x"), py::arg("y"), py::arg("heading"), py::arg("others") = std::vector<std::array<double, 2>>{},
        py::arg("task") = TaskKind::Navigation, py::arg("params") = ArenaParams{},
        py::arg("food") = std::vector<std::array<double, 2>>{},
        "Proximity and food readings of an agent at (x, y, heading).");

    // controller
    m.def("genome_length", py::overload_cast<TaskKind>(&genome_length), py::arg("task"));
    m.def(
        "activate",
        [](const std::vector<double>& weights, const std::vector<double>& inputs, std::pair<double, double> prev) {
            const ControlOutput o = activate(weights, inputs, {prev.first, prev.second});
            return std::make_pair(o.v_trans, o.v_rot);
        },
        py::arg("weights"), py::arg("inputs"), py::arg("prev") = std::make_pair(0.0, 0.0));
    m.def(
        "random_genome", [](std::size_t length, Rng& rng) { return random_genome(length, rng).weights; },
        py::arg("length"), py::arg("rng"));
    m.def(
        "mutate",
        [](const std::vector<double>& weights, double sigma, Rng& rng) {
            Genome g;
            g.weights = weights;
            return mutate(g, sigma, rng).weights;
        },
        py::arg("weights"), py::arg("sigma"), py::arg("rng"));

    // selection
    m.def(
        "select",
        [](SelectionMethod method, const std::vector<double>& fitness, std::size_t k, Rng& rng) {
            return select(method, fitness, k, rng);
        },
        py::arg("method"), py::arg("fitness"), py::arg("k"), py::arg("rng"), "Index of the selected entry.");

    // metrics
    m.def("avg_accumulated", [](const std::vector<double>& t, double f) { return avg_accumulated(t, f); },
          py::arg("trace"), py::arg("tail_fraction") = 0.08);
    m.def("fixed_budget", [](const std::vector<double>& t, double f) { return fixed_budget(t, f); },
          py::arg("trace"), py::arg("budget_fraction") = 0.92);
    m.def("time_to_target", [](const std::vector<double>& t, double target) { return time_to_target(t, target); },
          py::arg("trace"), py::arg("target"));
    m.def("accumulated_above",
          [](const std::vector<double>& t, double target) { return accumulated_above(t, target); }, py::arg("trace"),
          py::arg("target"));
    m.def(
        "compute_measures",
        [](const std::vector<double>& t, double target) { return measures_dict(compute_measures(t, target)); },
        py::arg("trace"), py::arg("target"));
    m.def(
        "compute_target",
        [](const std::vector<std::vector<double>>& traces, double fraction) { return compute_target(traces, fraction); },
        py::arg("traces"), py::arg("fraction") = 0.8);
    m.def(
        "mann_whitney_u",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            const MannWhitneyResult r = mann_whitney_u(a, b);
            return py::make_tuple(r.u, r.p, r.exact);
        },
        py::arg("a"), py::arg("b"), "(U of a, two-sided p, exact?)");
    m.def(
        "median_curve", [](const std::vector<std::vector<double>>& traces) { return median_curve(traces); },
        py::arg("traces"));

    // experiments
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("method"), py::arg("run"));
    m.def(
        "run_experiment",
        [](const ExperimentConfig& c, const std::filesystem::path& out_dir, unsigned jobs) {
            RunOptions opt;
            opt.out_dir = out_dir;
            opt.jobs = jobs;
            ExperimentResult res;
            {
                py::gil_scoped_release release;
                res = run_experiment(c, opt);
            }
            py::dict d;
            d["records"] = res.records.size();
            d["resumed"] = res.resumed;
            py::list failures;
            for (const auto& f : res.failures) failures.append(py::make_tuple(f.method, f.run, f.error));
            d["failures"] = failures;
            return d;
        },
        py::arg("config"), py::arg("out_dir"), py::arg("jobs") = 0);
    m.def(
        "analyze",
        [](const std::filesystem::path& dir, bool write) {
            const LoadedExperiment loaded = load_experiment(dir);
            const Analysis a = analyze(loaded.records, loaded.config);
            if (write) {
                write_analysis(a, loaded.config, dir);
                emit_plot_data(a, loaded.config, dir);
            }
            return analysis_dict(a);
        },
        py::arg("dir"), py::arg("write") = false,
        "Measures, pairwise tests and median curves of an experiment directory.");
}
