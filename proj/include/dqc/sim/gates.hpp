#pragma once

#include "dqc/sim/matrix.hpp"

namespace dqc::sim::gates {

Matrix I2();
Matrix H();
Matrix X();
Matrix Y();
Matrix Z();
Matrix S();
Matrix Sdg();
Matrix Rx(double theta);
Matrix Ry(double theta);
/// diag(e^{-i theta/2}, e^{i theta/2})
Matrix Rz(double theta);
/// diag(1, e^{i lambda})
Matrix P(double lambda);
/// Control is the first (most significant) target.
Matrix CNOT();

}  // namespace dqc::sim::gates
