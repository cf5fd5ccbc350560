#include "dqc/qpe/circuits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqc/qpe/phase.hpp"
#include "dqc/sim/gates.hpp"

namespace dqc::qpe {

namespace gates = sim::gates;

Program prepare_eigenstate(const noise::DeviceParams& device) {
    return {sim::gate(gates::H(), {kSystem}, device.single_gate_len)};
}

double ctrl_power_angle(double phase, unsigned k) {
    if (k < 1 || k > 62) {
        throw std::invalid_argument("controlled power: k must be in [1, 62]");
    }
    return 2.0 * std::numbers::pi * wrap01(std::ldexp(wrap01(phase), static_cast<int>(k) - 1));
}

Program build_ctrl_power_u(double phase, unsigned k, const noise::DeviceParams& device) {
    const double theta = ctrl_power_angle(phase, k);
    return {
        sim::gate(gates::H(), {kSystem}, device.single_gate_len),
        sim::frame_rz(kSystem, -theta / 2),
        sim::gate(gates::CNOT(), {kPointer, kSystem}, device.cnot_len),
        sim::frame_rz(kSystem, theta / 2),
        sim::gate(gates::CNOT(), {kPointer, kSystem}, device.cnot_len),
        sim::frame_rz(kPointer, theta / 2),
        sim::gate(gates::H(), {kSystem}, device.single_gate_len),
    };
}

KitaevPair build_kitaev_pair(double phase, unsigned k, const noise::DeviceParams& device) {
    Program head = prepare_eigenstate(device);
    head.push_back(sim::gate(gates::H(), {kPointer}, device.single_gate_len));
    for (auto& ins : build_ctrl_power_u(phase, k, device)) {
        head.push_back(std::move(ins));
    }
    KitaevPair out{head, head};
    out.sin_circuit.push_back(sim::frame_rz(kPointer, std::numbers::pi / 2));
    for (Program* p : {&out.cos_circuit, &out.sin_circuit}) {
        p->push_back(sim::gate(gates::H(), {kPointer}, device.single_gate_len));
        p->push_back(sim::measure_to(kPointer, 0));
    }
    return out;
}

Program build_ipe_round(double phase, unsigned k, double theta, const noise::DeviceParams& device) {
    Program out{sim::gate(gates::H(), {kPointer}, device.single_gate_len)};
    for (auto& ins : build_ctrl_power_u(phase, k, device)) {
        out.push_back(std::move(ins));
    }
    if (theta != 0.0) {
        out.push_back(sim::frame_rz(kPointer, theta));
    }
    out.push_back(sim::gate(gates::H(), {kPointer}, device.single_gate_len));
    return out;
}

}  // namespace dqc::qpe
