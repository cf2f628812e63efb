#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace govinf {

/// Boxplot statistics. Quartiles interpolate linearly between closest ranks
/// at position p * (n - 1); whiskers sit at the most extreme data points
/// within 1.5 * IQR of the quartiles and everything beyond is an outlier.
struct DistributionSummary {
    std::string metric;
    std::string paradigm;  // "CUA", "Baseline" or "ratio"
    std::size_t n = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;  // ascending
};

/// Linear-interpolation quantile of sorted data, p in [0, 1].
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double p);

/// Throws ContractError for empty input or non-finite values.
[[nodiscard]] DistributionSummary summarize(std::span<const double> values);

}  // namespace govinf
