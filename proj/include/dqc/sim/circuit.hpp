#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/density_matrix.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::sim {

/// Classical bits written by measurements and read by predicates.
class ClassicalRegister {
public:
    explicit ClassicalRegister(std::size_t width = 0) : bits_(width, 0) {}

    std::size_t width() const { return bits_.size(); }
    int get(std::size_t i) const;
    void set(std::size_t i, int bit);
    const std::vector<int>& bits() const { return bits_; }

private:
    std::vector<int> bits_;
};

/// Conjunction of (bit index, required value) terms. Empty is always true.
struct Predicate {
    std::vector<std::pair<unsigned, int>> terms;

    bool eval(const ClassicalRegister& reg) const;
};

struct UnitaryOp {
    std::vector<unsigned> targets;
    Matrix u;
};
struct MeasureOp {
    unsigned qubit = 0;
    unsigned cbit = 0;
};
struct ConditionalOp {
    Predicate predicate;
    UnitaryOp payload;
};
/// Conditional reset. With `cbit` set the latched bit decides the flip;
/// otherwise the qubit is measured (noisily) first.
struct ResetOp {
    unsigned qubit = 0;
    std::optional<unsigned> cbit;
};
struct DelayOp {};
/// Software frame change: Rz(angle), no duration and no error.
struct FrameRzOp {
    unsigned qubit = 0;
    double angle = 0.0;
};

struct Instruction {
    std::variant<UnitaryOp, MeasureOp, ConditionalOp, ResetOp, DelayOp, FrameRzOp> op;
    double duration = 0.0;  // seconds
};

/// Builders. Unitary payloads are checked to 1e-9 and durations must be >= 0;
/// both throw std::invalid_argument.
Instruction gate(Matrix u, std::vector<unsigned> targets, double duration);
Instruction measure_to(unsigned qubit, unsigned cbit);
Instruction conditional(Predicate predicate, Matrix u, std::vector<unsigned> targets, double duration);
Instruction reset(unsigned qubit, std::optional<unsigned> cbit = std::nullopt);
Instruction delay(double duration);
Instruction frame_rz(unsigned qubit, double angle);

struct RunOptions {
#ifdef NDEBUG
    bool check_invariants = false;
#else
    bool check_invariants = true;
#endif
    double invariant_tol = 1e-9;
};

/// Executes `program` in order against `state` and `classical`. Timed
/// instructions are followed by relaxation on every qubit for their
/// duration; measurements report through the assignment-error model.
void run_circuit(const std::vector<Instruction>& program, DensityMatrix& state, ClassicalRegister& classical,
                 const noise::DeviceParams& device, Rng& rng, const RunOptions& options = {});

}  // namespace dqc::sim
