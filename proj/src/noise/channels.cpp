#include "dqc/noise/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "dqc/sim/gates.hpp"

namespace dqc::noise {

using sim::Matrix;

KrausSet amplitude_damping_kraus(double t, double t1) {
    if (t < 0.0 || !(t1 > 0.0)) {
        throw std::invalid_argument("amplitude_damping_kraus: need t >= 0 and t1 > 0");
    }
    const double gamma = -std::expm1(-t / t1);
    return {Matrix(2, {1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)}), Matrix(2, {0.0, std::sqrt(gamma), 0.0, 0.0})};
}

KrausSet pure_dephasing_kraus(double t, double t1, double t2) {
    if (t < 0.0 || !(t1 > 0.0) || !(t2 > 0.0)) {
        throw std::invalid_argument("pure_dephasing_kraus: need t >= 0 and positive t1, t2");
    }
    if (t2 > 2.0 * t1 * (1.0 + 1e-12)) {
        throw std::invalid_argument("pure_dephasing_kraus: t2 exceeds 2*t1");
    }
    const double rate = 1.0 / t2 - 0.5 / t1;  // 1/Tphi
    if (rate <= 0.0) {
        return {Matrix::identity(2)};
    }
    const double p = -0.5 * std::expm1(-t * rate);
    return {sim::gates::I2() * std::sqrt(1.0 - p), sim::gates::Z() * std::sqrt(p)};
}

KrausSet depolarizing_kraus(double p, unsigned n_targets) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing_kraus: p must be in [0,1]");
    }
    const Matrix paulis[4] = {sim::gates::I2(), sim::gates::X(), sim::gates::Y(), sim::gates::Z()};
    KrausSet out;
    if (n_targets == 1) {
        // (1-p) rho + p I/2 = (1 - 3p/4) rho + (p/4) sum_{P != I} P rho P
        out.push_back(paulis[0] * std::sqrt(1.0 - 0.75 * p));
        for (int i = 1; i < 4; ++i) {
            out.push_back(paulis[i] * std::sqrt(p / 4.0));
        }
        return out;
    }
    if (n_targets == 2) {
        out.push_back(Matrix::identity(4) * std::sqrt(1.0 - 15.0 * p / 16.0));
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                out.push_back(sim::kron(paulis[a], paulis[b]) * std::sqrt(p / 16.0));
            }
        }
        return out;
    }
    throw std::invalid_argument("depolarizing_kraus: n_targets must be 1 or 2");
}

KrausSet excitation_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("excitation_kraus: p must be in [0,1]");
    }
    return {Matrix(2, {std::sqrt(1.0 - p), 0.0, 0.0, 1.0}), Matrix(2, {0.0, 0.0, std::sqrt(p), 0.0})};
}

void apply_relaxation(sim::DensityMatrix& state, unsigned qubit, double t, const DeviceParams& params) {
    if (t <= 0.0) {
        return;
    }
    const double t1 = params.t1_of(qubit);
    const double t2 = params.t2_of(qubit);
    const unsigned target[1] = {qubit};
    if (std::isfinite(t1)) {
        sim::apply_kraus(state, amplitude_damping_kraus(t, t1), target);
    }
    if (std::isfinite(t2)) {
        sim::apply_kraus(state, pure_dephasing_kraus(t, t1, t2), target);
    }
}

void apply_gate_noise(sim::DensityMatrix& state, std::span<const unsigned> targets, double duration,
                      const DeviceParams& params) {
    for (unsigned q = 0; q < state.n_qubits(); ++q) {
        apply_relaxation(state, q, duration, params);
    }
    if (!params.gate_depolarizing_enabled || targets.empty()) {
        return;
    }
    if (targets.size() == 1) {
        const double p = params.epg_single_of(targets[0]);
        if (p > 0.0) {
            sim::apply_kraus(state, depolarizing_kraus(p, 1), targets);
        }
    } else if (targets.size() == 2 && params.epg_cnot > 0.0) {
        sim::apply_kraus(state, depolarizing_kraus(params.epg_cnot, 2), targets);
    }
}

}  // namespace dqc::noise
