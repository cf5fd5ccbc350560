#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dqc::qpe {

/// Phase in units of 2*pi, value in [0, 1). `bits` holds phi_1..phi_m
/// (most significant first) when the phase came from a bit expansion.
struct PhaseFraction {
    double value = 0.0;
    std::vector<int> bits;

    static PhaseFraction from_bits(std::span<const int> bits);
    /// Wraps into [0, 1).
    static PhaseFraction from_value(double value);
    /// The m-bit code v/2^m, phi_1 taken from the top bit of v.
    static PhaseFraction from_code(std::uint64_t code, unsigned m);
};

/// x mod 1, always in [0, 1).
double wrap01(double x);

/// min(|a-b|, 1-|a-b|) for phases in [0, 1).
double circular_error(double estimate, double truth);

enum class Protocol { Ipe, Kitaev };

std::string to_string(Protocol p);
/// Accepts "ipe" and "kitaev"; throws std::invalid_argument otherwise.
Protocol parse_protocol(const std::string& name);

struct ResourceBudget {
    long total = 0;  // R, measurements across all circuits
    int bits = 0;    // m
};

/// IPE: floor(R/m) shots of the m-round circuit. Kitaev: floor(R/(2m)) shots
/// of each of the 2m circuits. Throws std::invalid_argument when that is 0.
long allocate_shots(const ResourceBudget& budget, Protocol protocol);

/// Smallest s with 2 exp(-2 eps^2 s) <= delta.
long long hoeffding_samples(double epsilon, double delta);

}  // namespace dqc::qpe
