#pragma once

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/density_matrix.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::noise {

struct NoisyOutcome {
    int reported = 0;  // what the classical electronics latch
    int actual = 0;    // projected state of the qubit
};

/// Projective measurement followed by a classical flip of the reported bit.
/// The flip draw is only taken when the relevant error rate is nonzero, so
/// with perfect assignment the rng stream matches sim::measure exactly.
NoisyOutcome noisy_measure(sim::DensityMatrix& state, unsigned qubit, const DeviceParams& params, sim::Rng& rng);

/// Reset driven by the reported bit: optional self-decay for
/// pointer_flip_delay, X if reported == 1, excitation channel with
/// p_reset_excited, then every other qubit idles for meas_reset_latency.
void conditional_reset(sim::DensityMatrix& state, unsigned qubit, int reported, const DeviceParams& params);

}  // namespace dqc::noise
