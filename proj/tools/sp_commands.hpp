#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dqc/noise/device_params.hpp"

namespace dqc::tools {

/// Parses and assembles `in`, writes `out` and its waveform table. Prints a
/// one-line summary to `log`. Returns the instruction count.
std::size_t sp_assemble_file(const std::string& in, const std::string& out, std::ostream& log);

/// Emulates `shots` runs and prints "record,count" rows (record bits in
/// measurement order) to `os`.
void sp_run_file(const std::string& bin, std::uint64_t seed, long shots, const noise::DeviceParams& device,
                 std::ostream& os);

}  // namespace dqc::tools
