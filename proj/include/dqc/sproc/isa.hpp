#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dqc::sproc {

/// Little-endian 128-bit word: bit i of the word is bit i of lo for i < 64
/// and bit i-64 of hi otherwise.
struct Word128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    bool operator==(const Word128&) const = default;
    std::array<std::uint8_t, 16> bytes() const;
    static Word128 from_bytes(const std::uint8_t* p);
};

enum class BranchMode : std::uint8_t { Next = 0, Unconditional = 1, Conditional = 2 };

/// Field layout, least significant first:
///   [0,24) sample_offset  [24,48) sample_count  [48,58) loop_count
///   [58,74) branch_index_1  [74,90) branch_index_2  [90,100) control
///   [100,128) reserved
/// Control: bit 0 trigger wait, bits 1-2 branch mode, bits 3-9 unused.
struct SPInstruction {
    static constexpr int kOffsetBits = 24;
    static constexpr int kCountBits = 24;
    static constexpr int kLoopBits = 10;
    static constexpr int kBranchBits = 16;
    static constexpr int kControlBits = 10;
    static constexpr int kReservedBits = 28;

    std::uint32_t sample_offset = 0;
    std::uint32_t sample_count = 0;
    std::uint16_t loop_count = 0;  // 0 and 1 both play once
    std::uint16_t branch_index_1 = 0;
    std::uint16_t branch_index_2 = 0;
    std::uint16_t control = 0;
    std::uint32_t reserved = 0;

    bool trigger_wait() const { return control & 1U; }
    BranchMode mode() const { return static_cast<BranchMode>((control >> 1) & 3U); }
    void set_trigger_wait(bool on) { control = static_cast<std::uint16_t>((control & ~1U) | (on ? 1U : 0U)); }
    void set_mode(BranchMode m) {
        control = static_cast<std::uint16_t>((control & ~6U) | (static_cast<unsigned>(m) << 1));
    }
    /// Unconditional self-branch without samples.
    bool is_halt(std::size_t own_index) const {
        return mode() == BranchMode::Unconditional && branch_index_1 == own_index && sample_count == 0 &&
               sample_offset == 0;
    }

    bool operator==(const SPInstruction&) const = default;
};

/// Throws std::invalid_argument when a field exceeds its width.
Word128 encode(const SPInstruction& instr);

/// Inverse of encode. Nonzero reserved bits, unused control bits or branch
/// mode 3 add a message to `warnings` (when given) but still decode.
SPInstruction decode(const Word128& word, std::vector<std::string>* warnings = nullptr);

}  // namespace dqc::sproc
