#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dqc/qpe/phase.hpp"

namespace dqc::qpe {

/// alpha = atan2(1 - 2 p0_sin, 2 p0_cos - 1) / 2 pi, wrapped to [0, 1).
/// Inputs are clamped to [0, 1]. Both at 0.5 is the zero vector: returns 0
/// and sets *degenerate.
double kitaev_alpha(double p0_cos, double p0_sin, bool* degenerate = nullptr);

struct KitaevEstimate {
    PhaseFraction phase;  // m + 2 bits
    bool inconsistent = false;  // some alpha_j had no candidate within 1/4
};

/// Bit-by-bit reconstruction from alpha_1..alpha_m: the nearest octant of
/// alpha_m fixes the last three bits, then each earlier bit is the candidate
/// within 1/4 of its alpha (ties go to 0 and set the flag).
KitaevEstimate kitaev_estimate(std::span<const double> alphas);

/// theta_k for the round that measures phi_k, given phi_{k+1}..phi_m in that
/// order: -2 pi sum_j phi_j / 2^{j-k+1}.
double ipe_theta(std::span<const int> later_bits);

enum class IpeMethod { EnsembleAverage, MostLikely, Top2Weighted, Top2ConsecutiveWeighted };

inline constexpr IpeMethod kAllIpeMethods[] = {IpeMethod::EnsembleAverage, IpeMethod::MostLikely,
                                               IpeMethod::Top2Weighted, IpeMethod::Top2ConsecutiveWeighted};

std::string to_string(IpeMethod method);
IpeMethod parse_ipe_method(const std::string& name);

/// Histogram of m-bit codes; codes are v in [0, 2^m) with value v / 2^m.
std::vector<std::uint64_t> count_codes(std::span<const std::uint32_t> codes, unsigned m);

/// Throws std::invalid_argument on an empty histogram.
PhaseFraction ipe_estimate_counts(std::span<const std::uint64_t> counts, unsigned m, IpeMethod method);
PhaseFraction ipe_estimate(std::span<const std::uint32_t> codes, unsigned m, IpeMethod method);

}  // namespace dqc::qpe
