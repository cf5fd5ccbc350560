#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqc::sproc {

/// Parse failure carrying the 1-based source line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class StmtKind { Label, Gate, Id, Measure, Bnz, Goto, Halt };

struct AsmStatement {
    StmtKind kind = StmtKind::Halt;
    std::string name;              // label, gate mnemonic, or branch target
    std::optional<double> angle;   // radians; nanoseconds for `delay`
    std::vector<unsigned> qubits;
    std::string creg;              // measure destination / bnz source
    int line = 0;
};

/// Gate mnemonics the toolchain knows, with their argument and qubit counts.
struct GateInfo {
    const char* name;
    bool has_angle;
    unsigned n_qubits;
    bool frame;  // software frame change, no samples
};
const GateInfo* find_gate(const std::string& mnemonic);
const std::vector<GateInfo>& gate_set();

/// Statements end with ';', labels with ':', '#' starts a comment.
///   start:
///     rx(pi / 2) q1;
///     measure q1 -> c;
///     bnz c, A;
/// Angle expressions take numbers, pi, + - * /, unary minus and parentheses.
/// Throws ParseError on empty input, unknown mnemonics, bad expressions,
/// duplicate or undefined labels.
std::vector<AsmStatement> parse_asm(const std::string& text);

/// Evaluates a standalone angle expression; throws ParseError (line 0).
double eval_angle(const std::string& expr);

}  // namespace dqc::sproc
