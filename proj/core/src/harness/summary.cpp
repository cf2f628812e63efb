#include "govinf/harness/summary.hpp"

#include <algorithm>
#include <cmath>

#include "govinf/core/errors.hpp"

namespace govinf {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ContractError("quantile of empty data");
    const double position = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(position));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double fraction = position - static_cast<double>(lo);
    return sorted[lo] + fraction * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize(std::span<const double> values) {
    if (values.empty()) throw ContractError("cannot summarize an empty sample");
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw ContractError("cannot summarize non-finite values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    DistributionSummary s;
    s.n = sorted.size();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);

    const double iqr = s.q3 - s.q1;
    const double low_fence = s.q1 - 1.5 * iqr;
    const double high_fence = s.q3 + 1.5 * iqr;
    bool any_inside = false;
    for (double v : sorted) {
        if (v < low_fence || v > high_fence) {
            s.outliers.push_back(v);
            continue;
        }
        if (!any_inside) {
            s.whisker_low = v;
            any_inside = true;
        }
        s.whisker_high = v;
    }
    return s;
}

}  // namespace govinf
