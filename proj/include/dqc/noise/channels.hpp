#pragma once

#include <span>

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/density_matrix.hpp"

namespace dqc::noise {

using sim::KrausSet;

/// T1 decay over `t`: gamma = 1 - exp(-t/t1). t1 may be +inf.
KrausSet amplitude_damping_kraus(double t, double t1);

/// Pure dephasing left over once T1 is accounted for:
/// 1/Tphi = 1/t2 - 1/(2 t1), p = (1 - exp(-t/Tphi))/2, {sqrt(1-p) I, sqrt(p) Z}.
/// Throws std::invalid_argument when t2 > 2 t1.
KrausSet pure_dephasing_kraus(double t, double t1, double t2);

/// rho -> (1-p) rho + p I/d on one or two qubits, as a Pauli mixture.
/// Throws std::invalid_argument for n_targets outside {1, 2} or p outside [0,1].
KrausSet depolarizing_kraus(double p, unsigned n_targets);

/// Leaves P(excited) = p on a qubit that starts in |0>.
KrausSet excitation_kraus(double p);

/// Amplitude damping then pure dephasing on one qubit for `t` seconds.
void apply_relaxation(sim::DensityMatrix& state, unsigned qubit, double t, const DeviceParams& params);

/// Noise for one timed instruction: every qubit relaxes for `duration`
/// (spectators idle, the targets are driven for the same time), then the
/// opt-in depolarizing channel hits the targets.
void apply_gate_noise(sim::DensityMatrix& state, std::span<const unsigned> targets, double duration,
                      const DeviceParams& params);

}  // namespace dqc::noise
