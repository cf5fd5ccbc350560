#include "dqc/experiments/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqc/sim/rng.hpp"

namespace dqc::experiments {

double median(std::span<const double> x) {
    if (x.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::vector<double> v(x.begin(), x.end());
    const std::size_t h = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
    if (v.size() % 2) {
        return v[h];
    }
    const double hi = v[h];
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h));
    return 0.5 * (lo + hi);
}

double mean(std::span<const double> x) {
    if (x.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double s = 0.0;
    for (double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

double bootstrap_se(std::size_t n, const std::function<double(std::span<const std::size_t>)>& statistic,
                    int resamples, std::uint64_t seed) {
    if (n == 0 || resamples < 2) {
        return 0.0;
    }
    sim::Rng rng(seed);
    std::vector<std::size_t> idx(n);
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        for (auto& i : idx) {
            i = std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
        }
        stats.push_back(statistic(idx));
    }
    const double mu = mean(stats);
    double ss = 0.0;
    for (double s : stats) {
        ss += (s - mu) * (s - mu);
    }
    return std::sqrt(ss / static_cast<double>(stats.size() - 1));
}

double median_se(std::span<const double> x, int resamples, std::uint64_t seed) {
    std::vector<double> buf(x.size());
    return bootstrap_se(
        x.size(),
        [&](std::span<const std::size_t> idx) {
            for (std::size_t i = 0; i < idx.size(); ++i) {
                buf[i] = x[idx[i]];
            }
            return median(buf);
        },
        resamples, seed);
}

double mean_se(std::span<const double> x) {
    if (x.size() < 2) {
        return 0.0;
    }
    const double mu = mean(x);
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mu) * (v - mu);
    }
    return std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
}

}  // namespace dqc::experiments
