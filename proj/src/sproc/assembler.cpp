#include "dqc/sproc/assembler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dqc::sproc {

namespace {

std::uint32_t samples(double seconds, double rate) {
    return static_cast<std::uint32_t>(std::llround(seconds * rate));
}

bool is_frame(const std::string& mnemonic) {
    const GateInfo* g = find_gate(mnemonic);
    return g && g->frame;
}

double canonical_angle(const std::string& mnemonic, double angle) {
    if (is_frame(mnemonic)) {
        // Frame phases are only meaningful mod 2 pi.
        const double two_pi = 2.0 * std::numbers::pi;
        angle = std::fmod(angle, two_pi);
        if (angle < 0.0) {
            angle += two_pi;
        }
    }
    return angle;
}

}  // namespace

std::string WaveformTable::key(const std::string& mnemonic, const std::vector<unsigned>& qubits, double angle) {
    std::ostringstream k;
    k << mnemonic;
    for (unsigned q : qubits) {
        k << ':' << q;
    }
    k << '@' << std::llround(canonical_angle(mnemonic, angle) * 1e6);
    return k.str();
}

const WaveformEntry& WaveformTable::intern(const std::string& mnemonic, const std::vector<unsigned>& qubits,
                                           double angle) {
    const std::string k = key(mnemonic, qubits, angle);
    if (auto it = by_key_.find(k); it != by_key_.end()) {
        return entries_[it->second];
    }
    WaveformEntry e{mnemonic, qubits, canonical_angle(mnemonic, angle), next_offset_, 0};
    if (mnemonic == "measure") {
        e.count = samples(timing_.readout, timing_.sample_rate);
    } else if (mnemonic == "reset") {
        e.count = samples(timing_.reset_pulse, timing_.sample_rate);
    } else if (mnemonic == "delay") {
        if (angle < 0.0) {
            throw std::invalid_argument("delay must be non-negative");
        }
        e.count = samples(angle * 1e-9, timing_.sample_rate);
    } else if (is_frame(mnemonic)) {
        e.count = 0;
    } else if (qubits.size() == 2) {
        e.count = samples(timing_.two_qubit_gate, timing_.sample_rate);
    } else {
        e.count = samples(timing_.single_gate, timing_.sample_rate);
    }
    // Zero-length entries still take one offset so they stay identifiable.
    const std::uint64_t next = static_cast<std::uint64_t>(next_offset_) + std::max<std::uint32_t>(e.count, 1);
    if (next >= (std::uint64_t{1} << SPInstruction::kOffsetBits) ||
        e.count >= (std::uint32_t{1} << SPInstruction::kCountBits)) {
        throw std::invalid_argument("waveform memory exhausted (24-bit sample offsets)");
    }
    next_offset_ = static_cast<std::uint32_t>(next);
    by_key_.emplace(k, entries_.size());
    by_offset_.emplace(e.offset, entries_.size());
    entries_.push_back(std::move(e));
    return entries_.back();
}

const WaveformEntry* WaveformTable::find(const std::string& mnemonic, const std::vector<unsigned>& qubits,
                                         double angle) const {
    auto it = by_key_.find(key(mnemonic, qubits, angle));
    return it == by_key_.end() ? nullptr : &entries_[it->second];
}

const WaveformEntry* WaveformTable::by_offset(std::uint32_t offset) const {
    auto it = by_offset_.find(offset);
    return it == by_offset_.end() ? nullptr : &entries_[it->second];
}

WaveformTable WaveformTable::from_entries(PulseTiming timing, std::vector<WaveformEntry> entries) {
    WaveformTable t(timing);
    for (auto& e : entries) {
        if (e.offset < kFirstOffset || t.by_offset_.count(e.offset)) {
            throw std::invalid_argument("waveform table: bad or duplicate offset " + std::to_string(e.offset));
        }
        const std::string k = key(e.mnemonic, e.qubits, e.angle);
        t.by_key_.emplace(k, t.entries_.size());
        t.by_offset_.emplace(e.offset, t.entries_.size());
        t.next_offset_ = std::max(t.next_offset_, e.offset + std::max<std::uint32_t>(e.count, 1));
        t.entries_.push_back(std::move(e));
    }
    return t;
}

WaveformTable waveform_table_for(const std::vector<AsmStatement>& statements, PulseTiming timing) {
    WaveformTable table(timing);
    for (const auto& st : statements) {
        if (st.kind == StmtKind::Gate) {
            table.intern(st.name, st.qubits, st.angle.value_or(0.0));
        } else if (st.kind == StmtKind::Measure) {
            table.intern("measure", st.qubits);
        }
    }
    return table;
}

SPProgram assemble(const std::vector<AsmStatement>& statements, const WaveformTable& table) {
    // Pass 1: instruction index of every label.
    std::map<std::string, std::size_t> label_at;
    std::size_t n = 0;
    for (const auto& st : statements) {
        switch (st.kind) {
            case StmtKind::Label:
                label_at[st.name] = n;
                break;
            case StmtKind::Id:
                break;
            default:
                ++n;
        }
    }
    if (n > kMaxInstructions) {
        throw std::invalid_argument("program needs " + std::to_string(n) + " instructions; limit is 65536");
    }
    auto target = [&](const AsmStatement& st) -> std::uint16_t {
        auto it = label_at.find(st.name);
        if (it == label_at.end()) {
            throw std::invalid_argument("line " + std::to_string(st.line) + ": undefined label '" + st.name + "'");
        }
        if (it->second >= n) {
            throw std::invalid_argument("line " + std::to_string(st.line) + ": label '" + st.name +
                                        "' has no instruction after it");
        }
        if (it->second > 0xFFFF) {
            throw std::invalid_argument("label '" + st.name + "' outside 16-bit branch range");
        }
        return static_cast<std::uint16_t>(it->second);
    };

    SPProgram prog{{}, table};
    prog.instructions.reserve(n);
    for (const auto& st : statements) {
        SPInstruction in;
        const std::size_t index = prog.instructions.size();
        switch (st.kind) {
            case StmtKind::Label:
            case StmtKind::Id:
                continue;
            case StmtKind::Gate:
            case StmtKind::Measure: {
                const std::string mnemonic = st.kind == StmtKind::Measure ? "measure" : st.name;
                const WaveformEntry* e = table.find(mnemonic, st.qubits, st.angle.value_or(0.0));
                if (!e) {
                    throw std::invalid_argument("line " + std::to_string(st.line) + ": no waveform for '" + mnemonic +
                                                "'");
                }
                in.sample_offset = e->offset;
                in.sample_count = e->count;
                in.loop_count = 1;
                in.set_mode(BranchMode::Next);
                break;
            }
            case StmtKind::Bnz:
                in.set_mode(BranchMode::Conditional);
                in.branch_index_1 = static_cast<std::uint16_t>(index + 1);
                in.branch_index_2 = target(st);
                break;
            case StmtKind::Goto:
                in.set_mode(BranchMode::Unconditional);
                in.branch_index_1 = target(st);
                break;
            case StmtKind::Halt:
                in.set_mode(BranchMode::Unconditional);
                in.branch_index_1 = static_cast<std::uint16_t>(index);
                break;
        }
        if (index == 0) {
            in.set_trigger_wait(true);
        }
        prog.instructions.push_back(in);
    }
    validate_program(prog);
    return prog;
}

SPProgram assemble(const std::vector<AsmStatement>& statements) {
    return assemble(statements, waveform_table_for(statements));
}

void validate_program(const SPProgram& program) {
    const std::size_t n = program.instructions.size();
    if (n == 0 || n > kMaxInstructions) {
        throw std::invalid_argument("program size must be in [1, 65536]");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const SPInstruction& in = program.instructions[i];
        const BranchMode mode = in.mode();
        if (static_cast<unsigned>(mode) > 2) {
            throw std::invalid_argument("instruction " + std::to_string(i) + ": undefined branch mode");
        }
        if (mode != BranchMode::Next && in.branch_index_1 >= n) {
            throw std::invalid_argument("instruction " + std::to_string(i) + ": branch target 1 out of range");
        }
        if (mode == BranchMode::Conditional && in.branch_index_2 >= n) {
            throw std::invalid_argument("instruction " + std::to_string(i) + ": branch target 2 out of range");
        }
        if (in.sample_offset != 0 && !program.waveforms.by_offset(in.sample_offset)) {
            throw std::invalid_argument("instruction " + std::to_string(i) + ": unknown waveform offset " +
                                        std::to_string(in.sample_offset));
        }
    }
}

}  // namespace dqc::sproc
