#include "dqc/noise/measurement.hpp"

#include "dqc/noise/channels.hpp"
#include "dqc/sim/gates.hpp"

namespace dqc::noise {

NoisyOutcome noisy_measure(sim::DensityMatrix& state, unsigned qubit, const DeviceParams& params, sim::Rng& rng) {
    const sim::MeasureOutcome m = sim::measure(state, qubit, rng);
    NoisyOutcome out{m.bit, m.bit};
    const double p_flip = m.bit == 0 ? params.p_assign_1given0 : params.p_assign_0given1;
    if (p_flip > 0.0 && rng.uniform() < p_flip) {
        out.reported = 1 - m.bit;
    }
    return out;
}

void conditional_reset(sim::DensityMatrix& state, unsigned qubit, int reported, const DeviceParams& params) {
    const unsigned target[1] = {qubit};
    apply_relaxation(state, qubit, params.pointer_flip_delay, params);
    if (reported == 1) {
        sim::apply_unitary(state, sim::gates::X(), target);
    }
    if (params.p_reset_excited > 0.0) {
        sim::apply_kraus(state, excitation_kraus(params.p_reset_excited), target);
    }
    for (unsigned q = 0; q < state.n_qubits(); ++q) {
        if (q != qubit) {
            apply_relaxation(state, q, params.meas_reset_latency, params);
        }
    }
}

}  // namespace dqc::noise
