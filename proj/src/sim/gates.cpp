#include "dqc/sim/gates.hpp"

#include <cmath>

namespace dqc::sim::gates {

namespace {
const cplx kI{0.0, 1.0};
}

Matrix I2() { return Matrix::identity(2); }

Matrix H() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix(2, {s, s, s, -s});
}

Matrix X() { return Matrix(2, {0.0, 1.0, 1.0, 0.0}); }
Matrix Y() { return Matrix(2, {0.0, -kI, kI, 0.0}); }
Matrix Z() { return Matrix(2, {1.0, 0.0, 0.0, -1.0}); }
Matrix S() { return Matrix(2, {1.0, 0.0, 0.0, kI}); }
Matrix Sdg() { return Matrix(2, {1.0, 0.0, 0.0, -kI}); }

Matrix Rx(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return Matrix(2, {c, -kI * s, -kI * s, c});
}

Matrix Ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return Matrix(2, {c, -s, s, c});
}

Matrix Rz(double theta) { return Matrix(2, {std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2))}); }

Matrix P(double lambda) { return Matrix(2, {1.0, 0.0, 0.0, std::exp(kI * lambda)}); }

Matrix CNOT() {
    return Matrix(4, {1.0, 0.0, 0.0, 0.0,  //
                      0.0, 1.0, 0.0, 0.0,  //
                      0.0, 0.0, 0.0, 1.0,  //
                      0.0, 0.0, 1.0, 0.0});
}

}  // namespace dqc::sim::gates
