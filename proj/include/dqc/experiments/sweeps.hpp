#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqc/experiments/config.hpp"

namespace dqc::experiments {

/// One (protocol, m, R, phase) run.
struct RunRow {
    qpe::Protocol protocol = qpe::Protocol::Ipe;
    unsigned m = 0;
    long resources = 0;
    std::size_t phase_index = 0;
    double phase = 0.0;
    double estimate = 0.0;
    double error = 0.0;
    long shots = 0;  // per circuit
    std::uint64_t seed = 0;
    bool skipped = false;  // budget below one shot per circuit
};

struct CellSummary {
    qpe::Protocol protocol = qpe::Protocol::Ipe;
    unsigned m = 0;
    long resources = 0;
    std::size_t n = 0;
    double median_error = 0.0;
    double mean_error = 0.0;
    double lower_bound = 0.0;  // 1 / 2^{m+1}
    long shots = 0;
    bool skipped = false;
};

struct SweepResult {
    std::vector<RunRow> rows;
    std::vector<CellSummary> summary;
};

/// Minimum over m of the median error at one R.
struct OptimalBits {
    qpe::Protocol protocol = qpe::Protocol::Ipe;
    long resources = 0;
    unsigned best_m = 0;
    double median_error = 0.0;
    double mean_error = 0.0;
};

struct ResourceSweep {
    SweepResult sweep;
    std::vector<OptimalBits> optimal;
};

/// Runs every (protocol, m, R, phase) of the grid. The outcome distribution
/// of each (phase, m) is computed once and sampled for every R with seed
/// derive_seed(seed, {protocol tag, m, R, phase index, salt}). Rows come
/// out sorted by protocol, m, R, phase index.
std::vector<RunRow> run_grid(const noise::DeviceParams& device, const std::vector<qpe::Protocol>& protocols,
                             const std::vector<unsigned>& bits, const std::vector<long>& resources,
                             const std::vector<double>& phases, qpe::IpeMethod method, qpe::Sampling sampling,
                             std::uint64_t seed, unsigned threads, std::uint64_t salt = 0);

std::vector<CellSummary> summarize(const std::vector<RunRow>& rows);

std::vector<long> default_bits_resources(const ExperimentConfig& c);
std::vector<long> default_sweep_resources(const ExperimentConfig& c);

/// Error against m for each R (default R = 50, 70, 200).
SweepResult sweep_bits(const ExperimentConfig& c);
/// Error against R, minimised over m. Throws on R <= 0.
ResourceSweep sweep_resources(const ExperimentConfig& c);

struct MapCell {
    double t = 0.0;        // T1 = T2 on both qubits
    double latency = 0.0;  // measure + reset cycle
    long resources = 0;
    unsigned m = 0;
    std::vector<double> ipe_errors;     // per phase
    std::vector<double> kitaev_errors;  // per phase
    double ipe_median = 0.0;
    double kitaev_median = 0.0;
    double ipe_mean = 0.0;
    double kitaev_mean = 0.0;
};

/// Coherence x latency grid at fixed m and each configured R. Per-phase
/// seeds do not depend on the cell, so neighbouring cells share random
/// numbers and differences between them are low-noise.
std::vector<MapCell> error_map(const ExperimentConfig& c);

struct ShootoutPoint {
    std::string method;  // IPE method name or "kitaev"
    long resources = 0;
    long shots = 0;
    std::vector<double> errors;  // per phase
    double mean_error = 0.0;
    double median_error = 0.0;
    double mean_stderr = 0.0;
    bool skipped = false;
};

/// Noiseless error against R for the four IPE estimators and Kitaev. All
/// IPE methods read the same sampled shots for a given (phase, R).
std::vector<ShootoutPoint> estimator_shootout(const ExperimentConfig& c);

}  // namespace dqc::experiments
