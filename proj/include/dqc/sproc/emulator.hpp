#pragma once

#include <optional>
#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/circuit.hpp"
#include "dqc/sproc/assembler.hpp"

namespace dqc::sproc {

struct EmulateOptions {
    unsigned n_qubits = 2;
    long max_cycles = 1'000'000;  // executed instruction words, loops counted once
};

struct EmulateResult {
    std::vector<int> record;  // reported bits in the order they were latched
    sim::DensityMatrix state{1};
    long cycles = 0;
    long triggers = 0;
};

/// Simulator operation for one waveform entry. Gate durations come from
/// `device`, so a lowered program matches a hand-built instruction list.
/// `reset` uses classical bit 0 as its latch.
sim::Instruction lower_entry(const WaveformEntry& entry, const noise::DeviceParams& device);

/// Straight-line lowering of parsed statements (labels and id skipped).
/// Throws std::invalid_argument on control flow.
std::vector<sim::Instruction> lower_branch_free(const std::vector<AsmStatement>& statements,
                                                const noise::DeviceParams& device);

/// Program-counter machine over `program`. Playouts run through the noisy
/// simulator `loop_count` times (0 plays once); a measurement latches its
/// reported bit, which the next conditional word consumes (1 takes
/// branch 2). Stops on a halt word or when the counter runs past the last
/// word. Throws std::runtime_error when max_cycles is exceeded and
/// std::out_of_range on a branch outside the program.
EmulateResult emulate(const SPProgram& program, const noise::DeviceParams& device, sim::Rng& rng,
                      const EmulateOptions& options = {},
                      std::optional<sim::DensityMatrix> initial = std::nullopt);

/// Measurement records as integers, record[i] in bit i, one emulation per shot.
std::vector<std::uint32_t> emulate_shots(const SPProgram& program, const noise::DeviceParams& device, long shots,
                                         sim::Rng& rng, const EmulateOptions& options = {});

}  // namespace dqc::sproc
