#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "swarmsel/config.hpp"
#include "swarmsel/metrics.hpp"
#include "swarmsel/tasks.hpp"

namespace swarmsel {

// Seed of run `run_index` of `method`, from a stable hash so adding or
// removing a method never changes another method's seeds.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view method, int run_index);

struct RunRecord {
    std::string config_hash;
    std::string method;
    int run = 0;
    std::uint64_t seed = 0;
    RunTrace trace;
    double wall_seconds = 0.0;
};

// Text record; trace values are written with 17 significant digits so a
// reload is bit-exact.
std::string format_record(const RunRecord& record, const std::string& config_text);
RunRecord parse_record(std::string_view text, const std::string& origin = "<record>");

std::filesystem::path record_path(const std::filesystem::path& out_dir, std::string_view method, int run);

struct RunOptions {
    std::filesystem::path out_dir = "results";
    unsigned jobs = 0;  // 0 = hardware concurrency
    // Called (serialised) after each finished cell.
    std::function<void(const RunRecord&, bool resumed)> on_record;
};

struct CellFailure {
    std::string method;
    int run = 0;
    std::string error;
};

struct ExperimentResult {
    std::vector<RunRecord> records;  // method order of the config, then run index
    std::vector<CellFailure> failures;
    int resumed = 0;
};

// Runs every (method, run) cell not already on disk. Each finished cell is
// written to out_dir/records/ at once, so an interrupted experiment resumes
// where it stopped. The resolved config goes to out_dir/config.resolved;
// a directory holding a different config is rejected with ConfigError.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

struct LoadedExperiment {
    ExperimentConfig config;
    std::string config_hash;
    std::vector<RunRecord> records;
};

// Reads config.resolved and every record in `dir`. Records whose hash
// differs from the config's are an error.
LoadedExperiment load_experiment(const std::filesystem::path& dir);

struct MeasureRow {
    std::string method;
    int run = 0;
    MeasureSet measures;
};

struct ComparisonCell {
    std::string method_a;
    std::string method_b;
    std::string measure;  // f_c | f_b | g_f | f_a
    MannWhitneyResult test;
};

struct Analysis {
    std::string task;
    std::string config_hash;
    std::vector<std::string> methods;
    double target = 0.0;
    std::vector<MeasureRow> measures;
    std::vector<ComparisonCell> comparisons;
    std::map<std::string, std::vector<double>> median_curves;
    std::vector<std::string> warnings;

    std::vector<double> measure_values(const std::string& method, const std::string& measure) const;
};

// Target, per-run measures, pairwise tests over every method pair and
// measure, and per-method median curves. Methods with fewer than two runs
// are left out of the tests (with a warning).
Analysis analyze(const std::vector<RunRecord>& records, const ExperimentConfig& config);

inline const std::vector<std::string> kMeasureNames{"f_c", "f_b", "g_f", "f_a"};

// Fixed 9-significant-digit decimal used in every CSV.
std::string format_decimal(double value);

// CSV bodies. Each starts with `#` comment lines carrying the config hash
// and the resolved config, then a column header row.
std::string measures_csv(const Analysis& analysis, const std::string& config_text);
std::string comparison_csv(const Analysis& analysis, const std::string& config_text);
std::string curves_csv(const Analysis& analysis, const std::string& config_text);

// Writes comparison_<task>.csv and measures_<task>.csv.
std::vector<std::filesystem::path> write_analysis(const Analysis& analysis, const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir);
// Writes curves_<task>.csv and measures_<task>.csv.
std::vector<std::filesystem::path> emit_plot_data(const Analysis& analysis, const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir);

}  // namespace swarmsel
