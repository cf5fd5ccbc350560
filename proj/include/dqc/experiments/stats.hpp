#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dqc::experiments {

/// Average of the two middle values for even sizes. NaN when empty.
double median(std::span<const double> x);
double mean(std::span<const double> x);

/// Standard deviation of `statistic` over `resamples` bootstrap draws of
/// the index set 0..n-1. The statistic sees the drawn indices, so paired
/// quantities can be resampled jointly.
double bootstrap_se(std::size_t n, const std::function<double(std::span<const std::size_t>)>& statistic,
                    int resamples, std::uint64_t seed);

/// Bootstrap SE of the median / mean of one sample.
double median_se(std::span<const double> x, int resamples = 400, std::uint64_t seed = 1);
double mean_se(std::span<const double> x);

}  // namespace dqc::experiments
