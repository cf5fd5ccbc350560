#pragma once

#include <vector>

namespace dqc::noise {

/// Hardware description consumed by the noise model. Durations are in
/// seconds, rates are probabilities. Per-qubit vectors are indexed by qubit;
/// a vector shorter than the register reuses its last entry.
///
/// Qubit 0 is the system (eigenstate) qubit and qubit 1 the pointer in every
/// circuit this project builds.
struct DeviceParams {
    std::vector<double> t1{68.20e-6, 49.23e-6};
    std::vector<double> t2{59.93e-6, 41.92e-6};
    double single_gate_len = 40e-9;  // 30 ns pulse + 10 ns buffer
    double cnot_len = 280e-9;
    double meas_reset_latency = 1.4e-6;  // two measure+reset cycles, lumped
    double p_assign_1given0 = 0.01;
    double p_assign_0given1 = 0.01;
    double p_reset_excited = 0.01;
    std::vector<double> epg_single{7.59e-4, 5.67e-4};
    double epg_cnot = 1.55e-2;
    bool gate_depolarizing_enabled = false;
    /// Time the reset qubit itself decays between projection and the
    /// conditional flip. Zero keeps the reset ideal apart from
    /// p_reset_excited.
    double pointer_flip_delay = 0.0;

    /// Coherence medians, supplement gate lengths, 1.4 us latency,
    /// assignment and reset error of 0.01.
    static DeviceParams paper_defaults();
    /// Infinite coherence, zero error rates; durations kept.
    static DeviceParams noiseless();
    /// Single coherence metric T1 = T2 = t on every qubit.
    static DeviceParams uniform_coherence(double t, double latency, double p_assign, double p_reset);

    double t1_of(unsigned qubit) const;
    double t2_of(unsigned qubit) const;
    double epg_single_of(unsigned qubit) const;

    /// Throws std::invalid_argument on t2 > 2*t1, probabilities outside
    /// [0,1] or negative durations.
    void validate() const;
};

}  // namespace dqc::noise
