#pragma once

#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/circuit.hpp"

namespace dqc::qpe {

inline constexpr unsigned kSystem = 0;
inline constexpr unsigned kPointer = 1;

using Program = std::vector<sim::Instruction>;

/// H on the system qubit: |0> -> |+>, the eigenstate with eigenvalue
/// e^{i 2 pi phase}. |-> has eigenvalue 1.
Program prepare_eigenstate(const noise::DeviceParams& device);

/// theta' = 2 pi (2^{k-1} phase mod 1), reduced before scaling.
double ctrl_power_angle(double phase, unsigned k);

/// Controlled-U^{2^{k-1}} with the pointer as control, one application of a
/// controlled phase of theta' = 2 pi 2^{k-1} phase in the Hadamard frame of
/// the system qubit. Two CNOTs; the Rz pieces are frame changes.
Program build_ctrl_power_u(double phase, unsigned k, const noise::DeviceParams& device);

struct KitaevPair {
    Program cos_circuit;
    Program sin_circuit;
};

/// Both Kitaev circuits for bit k, eigenstate preparation included and the
/// pointer measured into classical bit 0. The sin circuit adds a +pi/2 frame
/// rotation so that P(0) = (1 - sin 2 pi alpha)/2.
KitaevPair build_kitaev_pair(double phase, unsigned k, const noise::DeviceParams& device);

/// One IPE round without its measurement: H, controlled-U^{2^{k-1}},
/// feedback frame rotation theta, H on the pointer.
Program build_ipe_round(double phase, unsigned k, double theta, const noise::DeviceParams& device);

}  // namespace dqc::qpe
