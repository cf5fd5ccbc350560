#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/qpe/estimators.hpp"
#include "dqc/qpe/protocols.hpp"
#include "json.hpp"

namespace dqc::experiments {

struct ErrorMapConfig {
    std::vector<double> t_grid{5e-6, 10e-6, 20e-6, 40e-6, 55e-6, 80e-6, 160e-6};
    std::vector<double> latency_grid{0.2e-6, 0.5e-6, 1.0e-6, 1.4e-6, 2e-6, 5e-6, 10e-6};
    std::vector<long> resources{50, 100};
    unsigned bits = 6;
    double p_assign = 0.01;
    double p_reset = 0.03;
};

struct ShootoutConfig {
    unsigned bits = 5;
    std::vector<long> resources{5, 10, 15, 25, 50, 100, 200, 500, 1000};
};

/// Fast measure/reset cycling of the pointer alone.
struct ResetDemoConfig {
    double p_assign_1given0 = 0.0062;
    double p_assign_0given1 = 0.0104;
    double pointer_t1 = 49.23e-6;
    double pointer_t2 = 41.92e-6;
    double cycle = 0.7e-6;        // one measure + conditional reset
    double flip_delay = 0.585e-6;  // readout start to reset pulse
    int cycles = 4;
    long shots = 100000;
    bool calibrate = true;
    double first_cycle_target = 0.0165;  // P(1) after one cycle
    double p_reset = 0.0;  // used when calibrate is false
};

struct ReadoutFitConfig {
    double noise = 0.0;  // additive Gaussian sigma on the dephasing curves
    std::vector<double> nbar{0.04, 0.28};
    double echo_alpha_c = 0.8;
    double echo_n0 = 3.8;
    long traces = 5000;
    double fisher = 46.0;
};

struct ExperimentConfig {
    noise::DeviceParams device = noise::DeviceParams::paper_defaults();
    std::string protocol = "both";  // ipe, kitaev or both
    unsigned m_min = 1;
    unsigned m_max = 10;
    std::vector<long> resources;  // empty: each command's default grid
    int phase_count = 600;
    std::vector<double> phases;  // explicit list overrides phase_count
    qpe::IpeMethod method = qpe::IpeMethod::Top2ConsecutiveWeighted;
    qpe::Sampling sampling = qpe::Sampling::Exact;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out = "results";
    bool quick = false;

    ErrorMapConfig error_map;
    ShootoutConfig shootout;
    ResetDemoConfig reset_demo;
    ReadoutFitConfig readout;

    /// Throws std::invalid_argument on inconsistent values.
    void validate() const;
    bool runs(qpe::Protocol p) const;
};

/// Missing keys keep their defaults; unknown keys are an error so typos
/// do not silently fall back.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

nlohmann::json device_to_json(const noise::DeviceParams& d);
noise::DeviceParams device_from_json(const nlohmann::json& j, noise::DeviceParams base = {});

/// CI-scale grids: 100 phases unless listed explicitly, coarser resource and
/// map grids. Call after loading, before command-specific overrides.
void apply_quick(ExperimentConfig& c);

/// Explicit phases, or phase_count uniform draws on [0, 1) from the seed.
std::vector<double> phase_set(const ExperimentConfig& c);

}  // namespace dqc::experiments
