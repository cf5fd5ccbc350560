#pragma once

#include <vector>

#include "dqc/experiments/config.hpp"
#include "dqc/readout/csv_io.hpp"
#include "dqc/readout/dressed_dephasing.hpp"
#include "dqc/readout/photon_echo.hpp"

namespace dqc::experiments {

/// Pointer-qubit readout frequencies, Hz.
inline constexpr double kResonatorHz = 7.01325e9;
inline constexpr double kQubitHz = 5.3634e9;
inline constexpr double kAnharmonicityHz = -343.1e6;
/// Mean photons of the readout tone used by the algorithm.
inline constexpr double kAlgorithmNbar = 11.0;

struct ReadoutFitResult {
    readout::DressedFit dressed;
    readout::PowerLine power_line;
    double nbar_at_algorithm_power = 0.0;  // line evaluated at unit amplitude
    readout::EchoFit echo;
    double n_crit = 0.0;
    double fisher_separation = 0.0;
    double assignment_error = 0.0;
    double noise_sigma = 0.0;

    readout::Table dephasing;  // curve, nbar_true, delta_r_hz, one_plus_x, one_minus_y, fit_*
    readout::Table echo_data;  // t_s, signal, fit
    readout::Table kernel;     // t_s, kernel_i, kernel_q, mean0_i, mean0_q, mean1_i, mean1_q
    std::vector<readout::FitRecord> records;
};

/// Synthetic round trip through every readout characterisation: dressed
/// dephasing at the configured photon numbers, n-bar against amplitude^2
/// (amplitudes scaled so unit amplitude is the algorithm tone), photon
/// echo, n_crit, and a matched filter on traces tuned to the configured
/// Fisher separation.
ReadoutFitResult readout_fit(const ExperimentConfig& c);

}  // namespace dqc::experiments
