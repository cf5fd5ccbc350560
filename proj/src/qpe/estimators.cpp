#include "dqc/qpe/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqc::qpe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Count-weighted average of a and b along the shorter arc between them.
double short_arc_average(double a, std::uint64_t ca, double b, std::uint64_t cb) {
    double d = b - a;
    d -= std::round(d);
    return wrap01(a + d * static_cast<double>(cb) / static_cast<double>(ca + cb));
}

}  // namespace

double kitaev_alpha(double p0_cos, double p0_sin, bool* degenerate) {
    const double c = 2.0 * std::clamp(p0_cos, 0.0, 1.0) - 1.0;
    const double s = 1.0 - 2.0 * std::clamp(p0_sin, 0.0, 1.0);
    if (degenerate) {
        *degenerate = (c == 0.0 && s == 0.0);
    }
    if (c == 0.0 && s == 0.0) {
        return 0.0;
    }
    return wrap01(std::atan2(s, c) / kTwoPi);
}

KitaevEstimate kitaev_estimate(std::span<const double> alphas) {
    const std::size_t m = alphas.size();
    if (m == 0) {
        throw std::invalid_argument("kitaev_estimate: need at least one alpha");
    }
    std::vector<int> bits(m + 2, 0);  // bits[j-1] = phi_j
    const int octant = static_cast<int>(std::lround(8.0 * wrap01(alphas[m - 1]))) % 8;
    bits[m - 1] = (octant >> 2) & 1;
    bits[m] = (octant >> 1) & 1;
    bits[m + 1] = octant & 1;

    KitaevEstimate out;
    for (std::size_t j = m - 1; j >= 1; --j) {
        // Candidates 0.c phi_{j+1} phi_{j+2} for c = 0, 1.
        const double tail = bits[j] / 4.0 + bits[j + 1] / 8.0;
        const double d0 = circular_error(tail, wrap01(alphas[j - 1]));
        const double d1 = circular_error(0.5 + tail, wrap01(alphas[j - 1]));
        bits[j - 1] = d1 < d0 ? 1 : 0;
        if (std::min(d0, d1) >= 0.25) {
            out.inconsistent = true;
        }
    }
    out.phase = PhaseFraction::from_bits(bits);
    return out;
}

double ipe_theta(std::span<const int> later_bits) {
    double acc = 0.0;
    double scale = 0.25;  // phi_{k+1} / 2^2
    for (int b : later_bits) {
        acc += b * scale;
        scale *= 0.5;
    }
    return -kTwoPi * acc;
}

std::string to_string(IpeMethod method) {
    switch (method) {
        case IpeMethod::EnsembleAverage:
            return "ensemble_average";
        case IpeMethod::MostLikely:
            return "most_likely";
        case IpeMethod::Top2Weighted:
            return "top2_weighted";
        case IpeMethod::Top2ConsecutiveWeighted:
            return "top2_consecutive_weighted";
    }
    return "?";
}

IpeMethod parse_ipe_method(const std::string& name) {
    for (IpeMethod m : kAllIpeMethods) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown IPE estimator: " + name);
}

std::vector<std::uint64_t> count_codes(std::span<const std::uint32_t> codes, unsigned m) {
    if (m == 0 || m > 24) {
        throw std::invalid_argument("count_codes: m must be in [1, 24]");
    }
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    for (std::uint32_t c : codes) {
        if (c >= counts.size()) {
            throw std::invalid_argument("count_codes: code exceeds 2^m");
        }
        ++counts[c];
    }
    return counts;
}

PhaseFraction ipe_estimate_counts(std::span<const std::uint64_t> counts, unsigned m, IpeMethod method) {
    const std::size_t n = std::size_t{1} << m;
    if (counts.size() != n) {
        throw std::invalid_argument("ipe_estimate: histogram size must be 2^m");
    }
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    if (total == 0) {
        throw std::invalid_argument("ipe_estimate: no shots");
    }
    const double unit = 1.0 / static_cast<double>(n);

    switch (method) {
        case IpeMethod::EnsembleAverage: {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                if (counts[v] == 0) {
                    continue;
                }
                const double a = kTwoPi * v * unit;
                re += counts[v] * std::cos(a);
                im += counts[v] * std::sin(a);
            }
            return PhaseFraction::from_value(std::atan2(im, re) / kTwoPi);
        }
        case IpeMethod::MostLikely: {
            // max_element keeps the first maximum, i.e. the smaller code.
            const auto it = std::max_element(counts.begin(), counts.end());
            return PhaseFraction::from_code(static_cast<std::uint64_t>(it - counts.begin()), m);
        }
        case IpeMethod::Top2Weighted: {
            std::size_t first = 0;
            for (std::size_t v = 1; v < n; ++v) {
                if (counts[v] > counts[first]) {
                    first = v;
                }
            }
            std::size_t second = n;
            for (std::size_t v = 0; v < n; ++v) {
                if (v != first && counts[v] > 0 && (second == n || counts[v] > counts[second])) {
                    second = v;
                }
            }
            if (second == n) {
                return PhaseFraction::from_code(first, m);
            }
            return PhaseFraction::from_value(
                short_arc_average(first * unit, counts[first], second * unit, counts[second]));
        }
        case IpeMethod::Top2ConsecutiveWeighted: {
            std::size_t best = 0;
            std::uint64_t best_sum = 0;
            for (std::size_t v = 0; v < n; ++v) {
                const std::uint64_t s = counts[v] + counts[(v + 1) % n];
                if (s > best_sum) {
                    best_sum = s;
                    best = v;
                }
            }
            const std::size_t next = (best + 1) % n;
            if (counts[next] == 0) {
                return PhaseFraction::from_code(best, m);
            }
            return PhaseFraction::from_value(
                wrap01((best + static_cast<double>(counts[next]) / static_cast<double>(best_sum)) * unit));
        }
    }
    throw std::invalid_argument("ipe_estimate: unknown method");
}

PhaseFraction ipe_estimate(std::span<const std::uint32_t> codes, unsigned m, IpeMethod method) {
    return ipe_estimate_counts(count_codes(codes, m), m, method);
}

}  // namespace dqc::qpe
