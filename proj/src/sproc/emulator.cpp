#include "dqc/sproc/emulator.hpp"

#include <map>
#include <numbers>
#include <stdexcept>

#include "dqc/sim/gates.hpp"

namespace dqc::sproc {

namespace gates = sim::gates;

sim::Instruction lower_entry(const WaveformEntry& e, const noise::DeviceParams& device) {
    const auto& m = e.mnemonic;
    auto q = [&](std::size_t i) {
        if (i >= e.qubits.size()) {
            throw std::invalid_argument("waveform '" + m + "' is missing a qubit");
        }
        return e.qubits[i];
    };
    const double t1q = device.single_gate_len;
    if (m == "x") return sim::gate(gates::X(), {q(0)}, t1q);
    if (m == "y") return sim::gate(gates::Y(), {q(0)}, t1q);
    if (m == "h") return sim::gate(gates::H(), {q(0)}, t1q);
    if (m == "rx") return sim::gate(gates::Rx(e.angle), {q(0)}, t1q);
    if (m == "ry") return sim::gate(gates::Ry(e.angle), {q(0)}, t1q);
    // Frame gates equal Rz up to a global phase.
    if (m == "z") return sim::frame_rz(q(0), std::numbers::pi);
    if (m == "s") return sim::frame_rz(q(0), std::numbers::pi / 2);
    if (m == "sdg") return sim::frame_rz(q(0), -std::numbers::pi / 2);
    if (m == "rz" || m == "p") return sim::frame_rz(q(0), e.angle);
    if (m == "cx" || m == "cnot") return sim::gate(gates::CNOT(), {q(0), q(1)}, device.cnot_len);
    if (m == "measure") return sim::measure_to(q(0), 0);
    if (m == "reset") return sim::reset(q(0), 0);
    if (m == "delay") return sim::delay(e.angle * 1e-9);
    throw std::invalid_argument("no simulator mapping for waveform '" + m + "'");
}

std::vector<sim::Instruction> lower_branch_free(const std::vector<AsmStatement>& statements,
                                                const noise::DeviceParams& device) {
    WaveformTable scratch;
    std::vector<sim::Instruction> out;
    for (const auto& st : statements) {
        switch (st.kind) {
            case StmtKind::Label:
            case StmtKind::Id:
                break;
            case StmtKind::Gate:
                out.push_back(lower_entry(scratch.intern(st.name, st.qubits, st.angle.value_or(0.0)), device));
                break;
            case StmtKind::Measure:
                out.push_back(lower_entry(scratch.intern("measure", st.qubits), device));
                break;
            case StmtKind::Halt:
                return out;
            default:
                throw std::invalid_argument("line " + std::to_string(st.line) + ": control flow in branch-free lowering");
        }
    }
    return out;
}

EmulateResult emulate(const SPProgram& program, const noise::DeviceParams& device, sim::Rng& rng,
                      const EmulateOptions& options, std::optional<sim::DensityMatrix> initial) {
    const auto& code = program.instructions;
    const std::size_t n = code.size();
    EmulateResult res;
    res.state = initial ? std::move(*initial) : sim::DensityMatrix(options.n_qubits);

    // Lowered ops are cached per offset; most words share a handful of entries.
    std::vector<std::optional<sim::Instruction>> lowered(program.waveforms.entries().size());
    std::map<std::uint32_t, std::size_t> slot;
    for (std::size_t i = 0; i < program.waveforms.entries().size(); ++i) {
        slot[program.waveforms.entries()[i].offset] = i;
    }

    sim::ClassicalRegister latch(1);
    sim::RunOptions quiet;
    quiet.check_invariants = false;
    std::vector<sim::Instruction> one(1);

    std::size_t pc = 0;
    while (pc < n) {
        if (++res.cycles > options.max_cycles) {
            throw std::runtime_error("emulation exceeded " + std::to_string(options.max_cycles) +
                                     " cycles (runaway loop?)");
        }
        const SPInstruction& in = code[pc];
        if (in.is_halt(pc)) {
            break;
        }
        if (in.trigger_wait()) {
            ++res.triggers;
        }
        if (in.sample_offset != 0) {
            auto it = slot.find(in.sample_offset);
            if (it == slot.end()) {
                throw std::out_of_range("instruction " + std::to_string(pc) + ": unknown waveform offset");
            }
            auto& op = lowered[it->second];
            if (!op) {
                op = lower_entry(program.waveforms.entries()[it->second], device);
            }
            one[0] = *op;
            const bool is_measure = std::holds_alternative<sim::MeasureOp>(op->op);
            const unsigned reps = in.loop_count == 0 ? 1U : in.loop_count;
            for (unsigned r = 0; r < reps; ++r) {
                sim::run_circuit(one, res.state, latch, device, rng, quiet);
                if (is_measure) {
                    res.record.push_back(latch.get(0));
                }
            }
        }
        std::size_t next = pc + 1;
        switch (in.mode()) {
            case BranchMode::Next:
                break;
            case BranchMode::Unconditional:
                next = in.branch_index_1;
                break;
            case BranchMode::Conditional:
                next = latch.get(0) ? in.branch_index_2 : in.branch_index_1;
                break;
            default:
                throw std::runtime_error("instruction " + std::to_string(pc) + ": undefined branch mode");
        }
        if (in.mode() != BranchMode::Next && next >= n) {
            throw std::out_of_range("instruction " + std::to_string(pc) + ": branch to " + std::to_string(next) +
                                    " outside program of " + std::to_string(n));
        }
        pc = next;
    }
    return res;
}

std::vector<std::uint32_t> emulate_shots(const SPProgram& program, const noise::DeviceParams& device, long shots,
                                         sim::Rng& rng, const EmulateOptions& options) {
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(std::max(0L, shots)));
    for (long s = 0; s < shots; ++s) {
        const EmulateResult r = emulate(program, device, rng, options);
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < r.record.size() && i < 32; ++i) {
            v |= static_cast<std::uint32_t>(r.record[i]) << i;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace dqc::sproc
