#include "sp_commands.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dqc/sproc/asm_parser.hpp"
#include "dqc/sproc/emulator.hpp"
#include "dqc/sproc/program_io.hpp"

namespace dqc::tools {

std::size_t sp_assemble_file(const std::string& in, const std::string& out, std::ostream& log) {
    std::ifstream f(in);
    if (!f) {
        throw std::runtime_error("cannot open " + in);
    }
    std::stringstream text;
    text << f.rdbuf();
    const sproc::SPProgram prog = sproc::assemble(sproc::parse_asm(text.str()));
    sproc::write_program(prog, out);
    log << in << ": " << prog.instructions.size() << " instructions ("
        << 100.0 * static_cast<double>(prog.instructions.size()) / static_cast<double>(sproc::kMaxInstructions)
        << "% of 64K), " << prog.waveforms.entries().size() << " waveforms, "
        << prog.waveforms.next_offset() << " samples -> " << out << '\n';
    return prog.instructions.size();
}

void sp_run_file(const std::string& bin, std::uint64_t seed, long shots, const noise::DeviceParams& device,
                 std::ostream& os) {
    std::vector<std::string> warnings;
    const sproc::SPProgram prog = sproc::read_program(bin, &warnings);
    for (const auto& w : warnings) {
        os << "# warning: " << w << '\n';
    }
    sim::Rng rng(seed);
    std::map<std::string, long> hist;
    for (long s = 0; s < shots; ++s) {
        const auto r = sproc::emulate(prog, device, rng);
        std::string key;
        for (int b : r.record) {
            key.push_back(b ? '1' : '0');
        }
        ++hist[key];
    }
    os << "record,count\n";
    for (const auto& [k, n] : hist) {
        os << (k.empty() ? "-" : k) << ',' << n << '\n';
    }
}

}  // namespace dqc::tools
