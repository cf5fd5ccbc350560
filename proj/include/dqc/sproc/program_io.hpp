#pragma once

#include <string>
#include <vector>

#include "dqc/sproc/assembler.hpp"

namespace dqc::sproc {

/// Binary layout: 8-byte magic "SPROG1\0\0", instruction count as u64 LE,
/// then one 16-byte little-endian word per instruction.
std::vector<std::uint8_t> serialize_program(const std::vector<SPInstruction>& instructions);
/// Throws std::runtime_error on a bad magic, truncated data or trailing bytes.
std::vector<SPInstruction> deserialize_program(const std::vector<std::uint8_t>& bytes,
                                               std::vector<std::string>* warnings = nullptr);

std::string waveform_table_json(const WaveformTable& table);
WaveformTable waveform_table_from_json(const std::string& text);

/// Writes `path` and the waveform table to `path + ".wtab.json"`.
void write_program(const SPProgram& program, const std::string& path);
SPProgram read_program(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace dqc::sproc
