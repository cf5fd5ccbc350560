#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqc/experiments/config.hpp"
#include "dqc/experiments/readout_fit.hpp"
#include "dqc/experiments/reset_demo.hpp"
#include "dqc/experiments/sweeps.hpp"

namespace dqc::experiments {

/// Column names of every CSV the harness writes, in order. Plot scripts and
/// the schema tests read these.
namespace schema {
extern const std::vector<std::string> kRuns;           // *_runs.csv
extern const std::vector<std::string> kSummary;        // sweep_bits.csv, sweep_resources.csv
extern const std::vector<std::string> kOptimal;        // optimal_bits.csv
extern const std::vector<std::string> kErrorMap;       // error_map.csv
extern const std::vector<std::string> kEstimators;     // estimators.csv
extern const std::vector<std::string> kResetDemo;      // reset_demo.csv
extern const std::vector<std::string> kDephasing;      // dressed_dephasing.csv
extern const std::vector<std::string> kEcho;           // photon_echo.csv
extern const std::vector<std::string> kKernel;         // matched_filter.csv
}  // namespace schema

/// Shortest text that reads back to the same double ("nan" for NaN).
std::string format_number(double v);

/// 64-bit FNV-1a of the bytes.
std::uint64_t fnv1a64(const std::string& bytes);

/// Hash of the canonical (sorted-key, compact) JSON of the config.
std::string config_hash(const ExperimentConfig& c);

/// Each writer creates `dir` if needed and returns the file names written.
std::vector<std::string> write_sweep(const std::string& dir, const std::string& stem, const SweepResult& r);
std::vector<std::string> write_resource_sweep(const std::string& dir, const ResourceSweep& r);
std::vector<std::string> write_error_map(const std::string& dir, const std::vector<MapCell>& cells);
std::vector<std::string> write_estimators(const std::string& dir, const std::vector<ShootoutPoint>& points);
std::vector<std::string> write_reset_demo(const std::string& dir, const ResetDemoResult& r);
std::vector<std::string> write_readout_fit(const std::string& dir, const ReadoutFitResult& r);

/// manifest.json: tool, version, command, seed, config hash, the config
/// itself and the files written. Contains no timestamps so reruns are
/// byte-identical.
void write_manifest(const std::string& dir, const std::string& command, const ExperimentConfig& c,
                    const std::vector<std::string>& files);

const char* tool_version();

}  // namespace dqc::experiments
