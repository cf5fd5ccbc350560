#pragma once

#include <string>

#include "dqc/sproc/assembler.hpp"

namespace dqc::sproc {

/// Assembly for an m-bit IPE run on U = diag(1, e^{i 2 pi phase}) in the
/// Hadamard frame of q0, pointer q1. Every node of the outcome tree carries
/// its own frame rotations; after each non-final measurement `bnz` selects
/// the subtree for the reported bit, the 0-subtree falling through. Leaves
/// halt. The pointer is reset by `reset q1;` between rounds.
std::string compile_ipe_asm(unsigned m, double phase);

/// Parse + assemble of compile_ipe_asm. The measurement record, read as
/// sum record[i] << i, is the code run_ipe_shot returns for the same draws.
/// Throws std::invalid_argument if the tree exceeds 65536 instructions.
SPProgram compile_ipe(unsigned m, double phase);

}  // namespace dqc::sproc
