#include "dqc/sproc/isa.hpp"

#include <stdexcept>

namespace dqc::sproc {

namespace {

constexpr int kOffsetPos = 0;
constexpr int kCountPos = 24;
constexpr int kLoopPos = 48;
constexpr int kBranch1Pos = 58;
constexpr int kBranch2Pos = 74;
constexpr int kControlPos = 90;
constexpr int kReservedPos = 100;

void put(Word128& w, int pos, int width, std::uint64_t value, const char* name) {
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument(std::string("SPInstruction: ") + name + " exceeds " + std::to_string(width) +
                                    " bits");
    }
    for (int i = 0; i < width; ++i) {
        const int bit = pos + i;
        const std::uint64_t b = (value >> i) & 1U;
        if (bit < 64) {
            w.lo |= b << bit;
        } else {
            w.hi |= b << (bit - 64);
        }
    }
}

std::uint64_t get(const Word128& w, int pos, int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
        const int bit = pos + i;
        const std::uint64_t b = bit < 64 ? (w.lo >> bit) & 1U : (w.hi >> (bit - 64)) & 1U;
        v |= b << i;
    }
    return v;
}

}  // namespace

std::array<std::uint8_t, 16> Word128::bytes() const {
    std::array<std::uint8_t, 16> out{};
    for (int i = 0; i < 8; ++i) {
        out[i] = static_cast<std::uint8_t>(lo >> (8 * i));
        out[8 + i] = static_cast<std::uint8_t>(hi >> (8 * i));
    }
    return out;
}

Word128 Word128::from_bytes(const std::uint8_t* p) {
    Word128 w;
    for (int i = 0; i < 8; ++i) {
        w.lo |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        w.hi |= static_cast<std::uint64_t>(p[8 + i]) << (8 * i);
    }
    return w;
}

Word128 encode(const SPInstruction& in) {
    Word128 w;
    put(w, kOffsetPos, SPInstruction::kOffsetBits, in.sample_offset, "sample_offset");
    put(w, kCountPos, SPInstruction::kCountBits, in.sample_count, "sample_count");
    put(w, kLoopPos, SPInstruction::kLoopBits, in.loop_count, "loop_count");
    put(w, kBranch1Pos, SPInstruction::kBranchBits, in.branch_index_1, "branch_index_1");
    put(w, kBranch2Pos, SPInstruction::kBranchBits, in.branch_index_2, "branch_index_2");
    put(w, kControlPos, SPInstruction::kControlBits, in.control, "control");
    put(w, kReservedPos, SPInstruction::kReservedBits, in.reserved, "reserved");
    return w;
}

SPInstruction decode(const Word128& w, std::vector<std::string>* warnings) {
    SPInstruction in;
    in.sample_offset = static_cast<std::uint32_t>(get(w, kOffsetPos, SPInstruction::kOffsetBits));
    in.sample_count = static_cast<std::uint32_t>(get(w, kCountPos, SPInstruction::kCountBits));
    in.loop_count = static_cast<std::uint16_t>(get(w, kLoopPos, SPInstruction::kLoopBits));
    in.branch_index_1 = static_cast<std::uint16_t>(get(w, kBranch1Pos, SPInstruction::kBranchBits));
    in.branch_index_2 = static_cast<std::uint16_t>(get(w, kBranch2Pos, SPInstruction::kBranchBits));
    in.control = static_cast<std::uint16_t>(get(w, kControlPos, SPInstruction::kControlBits));
    in.reserved = static_cast<std::uint32_t>(get(w, kReservedPos, SPInstruction::kReservedBits));
    if (warnings) {
        if (in.reserved != 0) {
            warnings->push_back("reserved bits 100..127 are nonzero");
        }
        if ((in.control >> 3) != 0) {
            warnings->push_back("unused control bits 3..9 are nonzero");
        }
        if (((in.control >> 1) & 3U) == 3U) {
            warnings->push_back("branch mode 3 is undefined");
        }
    }
    return in;
}

}  // namespace dqc::sproc
