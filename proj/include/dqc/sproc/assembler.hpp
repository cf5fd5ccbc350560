#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dqc/sproc/asm_parser.hpp"
#include "dqc/sproc/isa.hpp"

namespace dqc::sproc {

inline constexpr std::size_t kMaxInstructions = 65536;

/// One playable operation: a sample block for pulses, or a zero-length
/// marker for frame changes. Offsets are unique per entry so the emulator
/// can recover the operation from sample_offset alone.
struct WaveformEntry {
    std::string mnemonic;
    std::vector<unsigned> qubits;
    double angle = 0.0;  // radians; nanoseconds for delay
    std::uint32_t offset = 0;
    std::uint32_t count = 0;
};

struct PulseTiming {
    double sample_rate = 2e9;  // samples per second
    double single_gate = 40e-9;
    double two_qubit_gate = 280e-9;
    double readout = 300e-9;
    double reset_pulse = 40e-9;
};

/// Offsets 0..7 are kept free so control-only words can use offset 0.
class WaveformTable {
public:
    static constexpr std::uint32_t kFirstOffset = 8;

    explicit WaveformTable(PulseTiming timing = {}) : timing_(timing) {}

    /// Entry for (mnemonic, qubits, angle quantised to 1e-6), created on first
    /// use. A shared entry keeps the angle it was created with.
    const WaveformEntry& intern(const std::string& mnemonic, const std::vector<unsigned>& qubits, double angle = 0.0);
    const WaveformEntry* find(const std::string& mnemonic, const std::vector<unsigned>& qubits,
                              double angle = 0.0) const;
    const WaveformEntry* by_offset(std::uint32_t offset) const;

    const std::vector<WaveformEntry>& entries() const { return entries_; }
    const PulseTiming& timing() const { return timing_; }
    /// Total samples allocated, i.e. the next free offset.
    std::uint32_t next_offset() const { return next_offset_; }

    /// Rebuilds a table from stored entries; throws on duplicate offsets.
    static WaveformTable from_entries(PulseTiming timing, std::vector<WaveformEntry> entries);

private:
    static std::string key(const std::string& mnemonic, const std::vector<unsigned>& qubits, double angle);

    PulseTiming timing_;
    std::vector<WaveformEntry> entries_;
    std::map<std::string, std::size_t> by_key_;
    std::map<std::uint32_t, std::size_t> by_offset_;
    std::uint32_t next_offset_ = kFirstOffset;
};

struct SPProgram {
    std::vector<SPInstruction> instructions;
    WaveformTable waveforms;
};

/// Interns every playable statement (gates, measure, reset, delay).
WaveformTable waveform_table_for(const std::vector<AsmStatement>& statements, PulseTiming timing = {});

/// One word per playout or control transfer. `id` emits nothing; bnz is a
/// conditional word (branch 1 = fall-through, branch 2 = taken); goto is
/// unconditional; halt is an unconditional self-branch with no samples. The
/// first word waits for the trigger. Throws std::invalid_argument when a
/// statement has no table entry, a label lies past the end, or the program
/// exceeds 65536 words.
SPProgram assemble(const std::vector<AsmStatement>& statements, const WaveformTable& table);
SPProgram assemble(const std::vector<AsmStatement>& statements);

/// Structural checks: size limit, branch targets in range, playout offsets
/// present in the table. Throws std::invalid_argument.
void validate_program(const SPProgram& program);

}  // namespace dqc::sproc
