#include "dqc/sproc/program_io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "json.hpp"

namespace dqc::sproc {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'R', 'O', 'G', '1', '\0', '\0'};
constexpr std::size_t kHeader = 16;

}  // namespace

std::vector<std::uint8_t> serialize_program(const std::vector<SPInstruction>& instructions) {
    std::vector<std::uint8_t> out(kHeader + 16 * instructions.size());
    std::memcpy(out.data(), kMagic, 8);
    const std::uint64_t n = instructions.size();
    for (int i = 0; i < 8; ++i) {
        out[8 + i] = static_cast<std::uint8_t>(n >> (8 * i));
    }
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        const auto b = encode(instructions[i]).bytes();
        std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(kHeader + 16 * i));
    }
    return out;
}

std::vector<SPInstruction> deserialize_program(const std::vector<std::uint8_t>& bytes,
                                               std::vector<std::string>* warnings) {
    if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic, 8) != 0) {
        throw std::runtime_error("not a sequence-processor program (bad magic)");
    }
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        n |= static_cast<std::uint64_t>(bytes[8 + i]) << (8 * i);
    }
    if (n > kMaxInstructions || bytes.size() != kHeader + 16 * n) {
        throw std::runtime_error("program file size does not match its instruction count");
    }
    std::vector<SPInstruction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> local;
        out.push_back(decode(Word128::from_bytes(bytes.data() + kHeader + 16 * i), &local));
        if (warnings) {
            for (auto& w : local) {
                warnings->push_back("instruction " + std::to_string(i) + ": " + w);
            }
        }
    }
    return out;
}

std::string waveform_table_json(const WaveformTable& table) {
    nlohmann::json j;
    const PulseTiming& t = table.timing();
    j["timing"] = {{"sample_rate", t.sample_rate},
                   {"single_gate", t.single_gate},
                   {"two_qubit_gate", t.two_qubit_gate},
                   {"readout", t.readout},
                   {"reset_pulse", t.reset_pulse}};
    j["entries"] = nlohmann::json::array();
    for (const auto& e : table.entries()) {
        j["entries"].push_back(
            {{"mnemonic", e.mnemonic}, {"qubits", e.qubits}, {"angle", e.angle}, {"offset", e.offset}, {"count", e.count}});
    }
    return j.dump(1);
}

WaveformTable waveform_table_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PulseTiming t;
    const auto& jt = j.at("timing");
    t.sample_rate = jt.at("sample_rate").get<double>();
    t.single_gate = jt.at("single_gate").get<double>();
    t.two_qubit_gate = jt.at("two_qubit_gate").get<double>();
    t.readout = jt.at("readout").get<double>();
    t.reset_pulse = jt.at("reset_pulse").get<double>();
    std::vector<WaveformEntry> entries;
    for (const auto& je : j.at("entries")) {
        entries.push_back({je.at("mnemonic").get<std::string>(), je.at("qubits").get<std::vector<unsigned>>(),
                           je.at("angle").get<double>(), je.at("offset").get<std::uint32_t>(),
                           je.at("count").get<std::uint32_t>()});
    }
    return WaveformTable::from_entries(t, std::move(entries));
}

void write_program(const SPProgram& program, const std::string& path) {
    validate_program(program);
    const auto bytes = serialize_program(program.instructions);
    std::ofstream bin(path, std::ios::binary);
    if (!bin) {
        throw std::runtime_error("cannot open " + path);
    }
    bin.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    std::ofstream side(path + ".wtab.json");
    if (!side) {
        throw std::runtime_error("cannot open " + path + ".wtab.json");
    }
    side << waveform_table_json(program.waveforms) << '\n';
    if (!bin || !side) {
        throw std::runtime_error("write failed for " + path);
    }
}

SPProgram read_program(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream bin(path, std::ios::binary);
    if (!bin) {
        throw std::runtime_error("cannot open " + path);
    }
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
    std::ifstream side(path + ".wtab.json");
    if (!side) {
        throw std::runtime_error("missing waveform table " + path + ".wtab.json");
    }
    const std::string text((std::istreambuf_iterator<char>(side)), std::istreambuf_iterator<char>());
    SPProgram prog{deserialize_program(bytes, warnings), waveform_table_from_json(text)};
    validate_program(prog);
    return prog;
}

}  // namespace dqc::sproc
