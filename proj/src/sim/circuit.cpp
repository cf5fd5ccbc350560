#include "dqc/sim/circuit.hpp"

#include <stdexcept>
#include <string>

#include "dqc/noise/channels.hpp"
#include "dqc/noise/measurement.hpp"
#include "dqc/sim/gates.hpp"

namespace dqc::sim {

namespace {

void check_payload(const Matrix& u, const std::vector<unsigned>& targets, double duration) {
    if (duration < 0.0) {
        throw std::invalid_argument("instruction duration must be >= 0");
    }
    if (u.dim() != (std::size_t{1} << targets.size()) || targets.empty() || targets.size() > 2) {
        throw std::invalid_argument("unitary dimension does not match target count");
    }
    if (u.unitarity_error() > 1e-9) {
        throw std::invalid_argument("instruction payload is not unitary");
    }
}

void check_cbit(const ClassicalRegister& reg, unsigned cbit) {
    if (cbit >= reg.width()) {
        throw std::out_of_range("classical bit " + std::to_string(cbit) + " not declared (width " +
                                std::to_string(reg.width()) + ")");
    }
}

}  // namespace

int ClassicalRegister::get(std::size_t i) const {
    if (i >= bits_.size()) {
        throw std::out_of_range("ClassicalRegister: index out of range");
    }
    return bits_[i];
}

void ClassicalRegister::set(std::size_t i, int bit) {
    if (i >= bits_.size()) {
        throw std::out_of_range("ClassicalRegister: index out of range");
    }
    bits_[i] = bit ? 1 : 0;
}

bool Predicate::eval(const ClassicalRegister& reg) const {
    for (const auto& [bit, value] : terms) {
        if (reg.get(bit) != value) {
            return false;
        }
    }
    return true;
}

Instruction gate(Matrix u, std::vector<unsigned> targets, double duration) {
    check_payload(u, targets, duration);
    return {UnitaryOp{std::move(targets), std::move(u)}, duration};
}

Instruction measure_to(unsigned qubit, unsigned cbit) { return {MeasureOp{qubit, cbit}, 0.0}; }

Instruction conditional(Predicate predicate, Matrix u, std::vector<unsigned> targets, double duration) {
    check_payload(u, targets, duration);
    return {ConditionalOp{std::move(predicate), UnitaryOp{std::move(targets), std::move(u)}}, duration};
}

Instruction reset(unsigned qubit, std::optional<unsigned> cbit) { return {ResetOp{qubit, cbit}, 0.0}; }

Instruction delay(double duration) {
    if (duration < 0.0) {
        throw std::invalid_argument("delay duration must be >= 0");
    }
    return {DelayOp{}, duration};
}

Instruction frame_rz(unsigned qubit, double angle) { return {FrameRzOp{qubit, angle}, 0.0}; }

void run_circuit(const std::vector<Instruction>& program, DensityMatrix& state, ClassicalRegister& classical,
                 const noise::DeviceParams& device, Rng& rng, const RunOptions& options) {
    for (const Instruction& ins : program) {
        std::span<const unsigned> noisy_targets;
        if (const auto* g = std::get_if<UnitaryOp>(&ins.op)) {
            apply_unitary(state, g->u, g->targets);
            noisy_targets = g->targets;
        } else if (const auto* m = std::get_if<MeasureOp>(&ins.op)) {
            check_cbit(classical, m->cbit);
            classical.set(m->cbit, noise::noisy_measure(state, m->qubit, device, rng).reported);
        } else if (const auto* c = std::get_if<ConditionalOp>(&ins.op)) {
            for (const auto& term : c->predicate.terms) {
                check_cbit(classical, term.first);
            }
            // The slot is scheduled either way; only the payload is conditional.
            if (c->predicate.eval(classical)) {
                apply_unitary(state, c->payload.u, c->payload.targets);
                noisy_targets = c->payload.targets;
            }
        } else if (const auto* r = std::get_if<ResetOp>(&ins.op)) {
            int reported = 0;
            if (r->cbit) {
                check_cbit(classical, *r->cbit);
                reported = classical.get(*r->cbit);
            } else {
                reported = noise::noisy_measure(state, r->qubit, device, rng).reported;
            }
            noise::conditional_reset(state, r->qubit, reported, device);
        } else if (const auto* f = std::get_if<FrameRzOp>(&ins.op)) {
            const unsigned target[1] = {f->qubit};
            apply_unitary(state, gates::Rz(f->angle), target);
            continue;  // frame changes are free
        }
        if (ins.duration > 0.0) {
            noise::apply_gate_noise(state, noisy_targets, ins.duration, device);
        }
        if (options.check_invariants) {
            state.validate(options.invariant_tol);
        }
    }
}

}  // namespace dqc::sim
