#include "swarmsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace swarmsel {

namespace {

constexpr double kEps = 1e-9;

void require_trace(std::span<const double> trace) {
    if (trace.empty()) throw MetricsError("measure requested on an empty trace");
}

struct Ranked {
    std::vector<std::int64_t> doubled_rank;  // 2 * midrank, per pooled value (a first, then b)
    double tie_term = 0.0;                   // sum over tie groups of t^3 - t
};

Ranked rank_pooled(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size() + b.size();
    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    Ranked out;
    out.doubled_rank.assign(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // Ranks i+1 .. j+1 share the midrank (i + j + 2) / 2.
        const auto doubled = static_cast<std::int64_t>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) out.doubled_rank[order[k]] = doubled;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

double u_statistic(const Ranked& r, std::size_t n1) {
    std::int64_t sum2 = 0;
    for (std::size_t i = 0; i < n1; ++i) sum2 += r.doubled_rank[i];
    const double n = static_cast<double>(n1);
    return static_cast<double>(sum2) / 2.0 - n * (n + 1.0) / 2.0;
}

void require_samples(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw MetricsError("Mann-Whitney test needs two non-empty samples");
}

}  // namespace

std::size_t tail_window_length(std::size_t generations, double tail_fraction) {
    const double w = std::ceil(tail_fraction * static_cast<double>(generations) - kEps);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(w, 1.0)), 1, std::max<std::size_t>(generations, 1));
}

std::size_t budget_index(std::size_t generations, double budget_fraction) {
    if (generations == 0) return 0;
    const double idx = std::floor(budget_fraction * static_cast<double>(generations) + kEps);
    return std::min(static_cast<std::size_t>(std::max(idx, 0.0)), generations - 1);
}

double avg_accumulated(std::span<const double> trace, double tail_fraction) {
    require_trace(trace);
    const std::size_t w = tail_window_length(trace.size(), tail_fraction);
    double sum = 0.0;
    for (std::size_t g = trace.size() - w; g < trace.size(); ++g) sum += trace[g];
    return sum / static_cast<double>(w);
}

double fixed_budget(std::span<const double> trace, double budget_fraction) {
    require_trace(trace);
    return trace[budget_index(trace.size(), budget_fraction)];
}

int time_to_target(std::span<const double> trace, double target) {
    require_trace(trace);
    for (std::size_t g = 0; g < trace.size(); ++g)
        if (trace[g] >= target) return static_cast<int>(g);
    return static_cast<int>(trace.size() - 1);
}

double accumulated_above(std::span<const double> trace, double target) {
    require_trace(trace);
    double sum = 0.0;
    for (double v : trace) sum += std::max(0.0, v - target);
    return sum;
}

MeasureSet compute_measures(std::span<const double> trace, double target, const MeasureParams& params) {
    return {avg_accumulated(trace, params.tail_fraction), fixed_budget(trace, params.budget_fraction),
            time_to_target(trace, target), accumulated_above(trace, target)};
}

double compute_target(std::span<const std::vector<double>> traces, double fraction) {
    bool any = false;
    double best = 0.0;
    for (const auto& t : traces) {
        for (double v : t) {
            if (!any || v > best) best = v;
            any = true;
        }
    }
    return fraction * best;
}

MannWhitneyResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    const Ranked r = rank_pooled(a, b);
    MannWhitneyResult res;
    res.exact = true;
    res.u = u_statistic(r, a.size());

    // Distribution of the doubled rank sum of the smaller sample over all
    // C(N, m) equally likely label assignments.
    const bool a_small = a.size() <= b.size();
    const std::size_t m = a_small ? a.size() : b.size();
    const std::size_t other = a_small ? b.size() : a.size();
    const std::size_t n = a.size() + b.size();
    std::int64_t max_sum = 0;
    for (std::int64_t v : r.doubled_rank) max_sum = std::max(max_sum, v);
    max_sum *= static_cast<std::int64_t>(m);
    const auto width = static_cast<std::size_t>(max_sum + 1);

    std::vector<std::vector<long double>> count(m + 1, std::vector<long double>(width, 0.0L));
    count[0][0] = 1.0L;
    for (std::size_t item = 0; item < n; ++item) {
        const auto w = static_cast<std::size_t>(r.doubled_rank[item]);
        const std::size_t top = std::min(item + 1, m);
        for (std::size_t k = top; k >= 1; --k) {
            auto& dst = count[k];
            const auto& src = count[k - 1];
            for (std::size_t s = width; s-- > w;) dst[s] += src[s - w];
        }
    }

    std::int64_t observed = 0;
    const std::size_t offset = a_small ? 0 : a.size();
    for (std::size_t i = 0; i < m; ++i) observed += r.doubled_rank[offset + i];
    // Doubled U of the smaller sample and its doubled null mean.
    const auto mm = static_cast<std::int64_t>(m);
    const std::int64_t mean2 = mm * static_cast<std::int64_t>(other);
    const std::int64_t dev_obs = std::llabs(observed - mm * (mm + 1) - mean2);

    long double extreme = 0.0L;
    long double total = 0.0L;
    for (std::size_t s = 0; s < width; ++s) {
        const long double c = count[m][s];
        if (c == 0.0L) continue;
        total += c;
        const std::int64_t dev = std::llabs(static_cast<std::int64_t>(s) - mm * (mm + 1) - mean2);
        if (dev >= dev_obs) extreme += c;
    }
    res.p = std::min(1.0, static_cast<double>(extreme / total));
    return res;
}

MannWhitneyResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    const Ranked r = rank_pooled(a, b);
    MannWhitneyResult res;
    res.u = u_statistic(r, a.size());
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;
    const double mean = n1 * n2 / 2.0;
    double var = n1 * n2 / 12.0 * (n + 1.0);
    if (n > 1.0) var -= n1 * n2 / 12.0 * r.tie_term / (n * (n - 1.0));
    if (var <= 0.0) {
        res.p = 1.0;
        return res;
    }
    const double z = std::max(0.0, std::abs(res.u - mean) - 0.5) / std::sqrt(var);
    res.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    if (std::min(a.size(), b.size()) >= kExactMannWhitneyBelow) return mann_whitney_u_normal(a, b);
    return mann_whitney_u_exact(a, b);
}

double median(std::vector<double> values) {
    if (values.empty()) throw MetricsError("median of an empty set");
    const std::size_t n = values.size();
    std::sort(values.begin(), values.end());
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> median_curve(std::span<const std::vector<double>> traces) {
    if (traces.empty()) return {};
    std::size_t g_count = traces[0].size();
    for (const auto& t : traces) g_count = std::min(g_count, t.size());
    std::vector<double> out(g_count);
    std::vector<double> column(traces.size());
    for (std::size_t g = 0; g < g_count; ++g) {
        for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r][g];
        out[g] = median(column);
    }
    return out;
}

double regression_slope(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const double x_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (double v : values) y_mean += v;
    y_mean /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxy += dx * (values[i] - y_mean);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace swarmsel
