#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace swarmsel {

class MetricsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MeasureSet {
    double f_c = 0.0;  // average swarm fitness over the final window
    double f_b = 0.0;  // swarm fitness at the fixed budget generation
    int g_f = 0;       // first generation reaching the target, else the last
    double f_a = 0.0;  // accumulated excess over the target
};

struct MeasureParams {
    double tail_fraction = 0.08;
    double budget_fraction = 0.92;
    double target_fraction = 0.8;
};

// Window helpers. With matching fractions (0.08 / 0.92) the budget index is
// the first generation of the tail window for every trace length.
std::size_t tail_window_length(std::size_t generations, double tail_fraction);  // ceil(fraction * G)
std::size_t budget_index(std::size_t generations, double budget_fraction);      // floor(fraction * G), <= G-1

// All measure functions throw MetricsError on an empty trace.
double avg_accumulated(std::span<const double> trace, double tail_fraction = 0.08);
double fixed_budget(std::span<const double> trace, double budget_fraction = 0.92);
int time_to_target(std::span<const double> trace, double target);
// Sum over generations of max(0, F_s(g) - target).
double accumulated_above(std::span<const double> trace, double target);

MeasureSet compute_measures(std::span<const double> trace, double target, const MeasureParams& params = {});

// fraction * the largest value of any generation of any trace.
double compute_target(std::span<const std::vector<double>> traces, double fraction = 0.8);

struct MannWhitneyResult {
    double u = 0.0;  // U of the first sample: pairs a_i > b_j, ties count 1/2
    double p = 1.0;  // two-sided
    bool exact = false;
    bool significant(double alpha = 0.01) const { return p < alpha; }
};

// Midranks for ties. For min(n1, n2) >= 8 the p-value uses the normal
// approximation with tie-corrected variance and continuity correction;
// below that it is the exact permutation distribution of U given the
// observed ranks. Throws MetricsError if either sample is empty.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
MannWhitneyResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b);
MannWhitneyResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kExactMannWhitneyBelow = 8;

// Elementwise median over traces truncated to the shortest one; even counts
// take the midpoint of the two central values.
std::vector<double> median_curve(std::span<const std::vector<double>> traces);

double median(std::vector<double> values);

// Least-squares slope of values against their index.
double regression_slope(std::span<const double> values);

}  // namespace swarmsel
