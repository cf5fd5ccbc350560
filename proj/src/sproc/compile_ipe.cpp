#include "dqc/sproc/compile_ipe.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dqc/qpe/circuits.hpp"
#include "dqc/qpe/estimators.hpp"
#include "dqc/sproc/asm_parser.hpp"

namespace dqc::sproc {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct TreeWriter {
    unsigned m;
    double phase;
    std::ostringstream out;

    // `code` holds phi_{k+1}..phi_m at bit positions m-j, as run_ipe_shot builds it.
    void node(unsigned k, std::uint32_t code, const std::string& path) {
        std::vector<int> later;
        for (unsigned j = k + 1; j <= m; ++j) {
            later.push_back(static_cast<int>((code >> (m - j)) & 1U));
        }
        const double theta = qpe::ipe_theta(later);
        const double tp = qpe::ctrl_power_angle(phase, k);
        out << "  h q1;\n"
            << "  h q0;\n"
            << "  rz(" << num(-tp / 2) << ") q0;\n"
            << "  cx q1, q0;\n"
            << "  rz(" << num(tp / 2) << ") q0;\n"
            << "  cx q1, q0;\n"
            << "  rz(" << num(tp / 2) << ") q1;\n"
            << "  h q0;\n";
        if (theta != 0.0) {
            out << "  rz(" << num(theta) << ") q1;\n";
        }
        out << "  h q1;\n"
            << "  measure q1 -> c;\n";
        if (k == 1) {
            out << "  halt;\n";
            return;
        }
        out << "  reset q1;\n";
        const std::string taken = "b" + path + "1";
        out << "  bnz c, " << taken << ";\n";
        node(k - 1, code, path + "0");
        out << taken << ":\n";
        node(k - 1, code | (1U << (m - k)), path + "1");
    }
};

}  // namespace

std::string compile_ipe_asm(unsigned m, double phase) {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("compile_ipe: m must be in [1, 20]");
    }
    TreeWriter w{m, phase, {}};
    w.out << "# iterative phase estimation, " << m << " bits, phase " << num(phase) << "\n"
          << "start:\n"
          << "  h q0;\n";
    w.node(m, 0, "");
    return w.out.str();
}

SPProgram compile_ipe(unsigned m, double phase) { return assemble(parse_asm(compile_ipe_asm(m, phase))); }

}  // namespace dqc::sproc
