#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/sim/circuit.hpp"
#include "dqc/sim/density_matrix.hpp"
#include "dqc/sim/gates.hpp"

using namespace dqc::sim;
using dqc::noise::DeviceParams;

namespace {

const unsigned q0[] = {0};
const unsigned q1[] = {1};

DensityMatrix plus_state() {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx amp[] = {s, s};
    return DensityMatrix::from_pure(amp);
}

// Plain statevector, qubit q is bit q of the index.
struct Statevector {
    unsigned n;
    std::vector<cplx> a;
    explicit Statevector(unsigned n_) : n(n_), a(std::size_t{1} << n_) { a[0] = 1.0; }

    void apply(const Matrix& u, const std::vector<unsigned>& t) {
        std::vector<cplx> out(a.size());
        const std::size_t k = t.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::size_t col = 0;
            for (std::size_t j = 0; j < k; ++j) col = (col << 1) | ((i >> t[j]) & 1U);
            for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
                std::size_t dst = i;
                for (std::size_t j = 0; j < k; ++j) {
                    const std::size_t b = (row >> (k - 1 - j)) & 1U;
                    dst = (dst & ~(std::size_t{1} << t[j])) | (b << t[j]);
                }
                out[dst] += u(row, col) * a[i];
            }
        }
        a = out;
    }
    DensityMatrix rho() const { return DensityMatrix::from_pure(a); }
};

Matrix random_unitary_1q(std::mt19937_64& g) {
    std::uniform_real_distribution<double> d(0, 2 * M_PI);
    return gates::Rz(d(g)) * gates::Ry(d(g)) * gates::Rz(d(g));
}

double max_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) e = std::max(e, std::abs(a.data()[i] - b.data()[i]));
    return e;
}

}  // namespace

TEST(DensityMatrix, StartsInGroundState) {
    DensityMatrix r(3);
    EXPECT_EQ(r.dim(), 8u);
    EXPECT_DOUBLE_EQ(r(0, 0).real(), 1.0);
    EXPECT_DOUBLE_EQ(r.trace(), 1.0);
    EXPECT_TRUE(r.check_invariants().ok());
}

TEST(DensityMatrix, RejectsBadSizes) {
    EXPECT_THROW(DensityMatrix(0), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(9), std::invalid_argument);
}

TEST(DensityMatrix, FromMatrixValidates) {
    EXPECT_THROW(DensityMatrix::from_matrix(1, {1.0, 0.0, 0.0, 1.0}), std::runtime_error);
    EXPECT_THROW(DensityMatrix::from_matrix(1, {1.5, 0.0, 0.0, -0.5}), std::runtime_error);
    EXPECT_NO_THROW(DensityMatrix::from_matrix(1, {0.5, 0.0, 0.0, 0.5}));
}

TEST(DensityMatrix, PopulationAndReduced) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx bell[] = {s, 0.0, 0.0, s};
    const auto r = DensityMatrix::from_pure(bell);
    EXPECT_NEAR(r.population(0, 1), 0.5, 1e-15);
    const Matrix red = r.reduced(1);
    EXPECT_NEAR(red(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(red(0, 1)), 0.0, 1e-15);
}

TEST(ApplyUnitary, IdentityLeavesStateUnchanged) {
    auto r = plus_state();
    const auto before = r;
    apply_unitary(r, gates::I2(), q0);
    EXPECT_EQ(max_diff(r, before), 0.0);
}

TEST(ApplyUnitary, XFlipsGround) {
    DensityMatrix r(1);
    apply_unitary(r, gates::X(), q0);
    EXPECT_NEAR(r(1, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(r(0, 0).real(), 0.0, 1e-15);
}

TEST(ApplyUnitary, HadamardMatchesMatrixProduct) {
    DensityMatrix r(1);
    apply_unitary(r, gates::H(), q0);
    const Matrix h = gates::H();
    Matrix g0(2);
    g0(0, 0) = 1.0;
    const Matrix expect = h * g0 * h.adjoint();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            EXPECT_NEAR(std::abs(r(i, j) - expect(i, j)), 0.0, 1e-15);
            EXPECT_NEAR(r(i, j).real(), 0.5, 1e-15);
        }
}

TEST(ApplyUnitary, Errors) {
    DensityMatrix r(2);
    const unsigned both[] = {0, 1};
    const unsigned same[] = {1, 1};
    const unsigned out[] = {2};
    EXPECT_THROW(apply_unitary(r, gates::H(), both), std::invalid_argument);
    EXPECT_THROW(apply_unitary(r, gates::CNOT(), same), std::invalid_argument);
    EXPECT_THROW(apply_unitary(r, gates::H(), out), std::invalid_argument);
    EXPECT_THROW(apply_unitary(r, Matrix(2, {1.0, 0.0, 0.0, 2.0}), q0), std::invalid_argument);
}

TEST(ApplyUnitary, CnotControlIsFirstTarget) {
    DensityMatrix r(2);
    apply_unitary(r, gates::X(), q1);
    const unsigned ctl1[] = {1, 0};
    apply_unitary(r, gates::CNOT(), ctl1);
    EXPECT_NEAR(r.population(0, 1), 1.0, 1e-15);
    EXPECT_NEAR(r.population(1, 1), 1.0, 1e-15);
}

TEST(ApplyKraus, IdentitySet) {
    auto r = plus_state();
    const auto before = r;
    apply_kraus(r, {gates::I2()}, q0);
    EXPECT_LT(max_diff(r, before), 1e-15);
}

TEST(ApplyKraus, PerfectResetChannel) {
    auto r = plus_state();
    const KrausSet reset{Matrix(2, {1.0, 0.0, 0.0, 0.0}), Matrix(2, {0.0, 1.0, 0.0, 0.0})};
    apply_kraus(r, reset, q0);
    EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-15);
}

TEST(ApplyKraus, HalfAmplitudeDampingOnExcited) {
    DensityMatrix r(1);
    apply_unitary(r, gates::X(), q0);
    const double g = 0.5;
    const KrausSet ad{Matrix(2, {1.0, 0.0, 0.0, std::sqrt(1 - g)}), Matrix(2, {0.0, std::sqrt(g), 0.0, 0.0})};
    apply_kraus(r, ad, q0);
    EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(r(1, 1).real(), 0.5, 1e-15);
}

TEST(ApplyKraus, RejectsNonCptp) {
    DensityMatrix r(1);
    EXPECT_THROW(apply_kraus(r, {gates::I2() * 0.9}, q0), std::invalid_argument);
}

TEST(Measure, GroundIsDeterministic) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        DensityMatrix r(1);
        const auto o = measure(r, 0, rng);
        EXPECT_EQ(o.bit, 0);
        EXPECT_DOUBLE_EQ(o.probability, 1.0);
        EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-15);
    }
}

TEST(Measure, PlusStateIsFair) {
    Rng rng(2);
    const int n = 10000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        auto r = plus_state();
        zeros += measure(r, 0, rng).bit == 0;
    }
    EXPECT_NEAR(zeros / double(n), 0.5, 3 * std::sqrt(0.25 / n));
}

TEST(Measure, BellOutcomesCorrelate) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx bell[] = {s, 0.0, 0.0, s};
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        auto r = DensityMatrix::from_pure(bell);
        const int b = measure(r, 0, rng).bit;
        EXPECT_NEAR(r.population(1, b), 1.0, 1e-12);
    }
}

TEST(Measure, CorruptedStateThrows) {
    DensityMatrix r(1);
    r.mutable_data()[0] = 0.0;
    Rng rng(4);
    EXPECT_THROW(measure(r, 0, rng), std::runtime_error);
}

TEST(Project, ReturnsBranchProbability) {
    auto r = plus_state();
    EXPECT_NEAR(project(r, 0, 1), 0.5, 1e-15);
    EXPECT_NEAR(r(1, 1).real(), 1.0, 1e-15);
}

TEST(RunCircuit, ConditionalResetNoiseless) {
    const auto dev = DeviceParams::noiseless();
    Rng rng(5);
    const std::vector<Instruction> prog{
        gate(gates::H(), {0}, 40e-9),
        measure_to(0, 0),
        conditional(Predicate{{{0, 1}}}, gates::X(), {0}, 40e-9),
    };
    for (int i = 0; i < 200; ++i) {
        DensityMatrix r(1);
        ClassicalRegister c(1);
        run_circuit(prog, r, c, dev, rng);
        EXPECT_NEAR(r.population(0, 0), 1.0, 1e-12);
    }
}

TEST(RunCircuit, EmptyProgram) {
    auto r = plus_state();
    const auto before = r;
    ClassicalRegister c;
    Rng rng(6);
    run_circuit({}, r, c, DeviceParams::paper_defaults(), rng);
    EXPECT_EQ(max_diff(r, before), 0.0);
}

TEST(RunCircuit, DelayOfOneT1) {
    DeviceParams dev;
    dev.t1 = {30e-6};
    dev.t2 = {60e-6};
    DensityMatrix r(1);
    apply_unitary(r, gates::X(), q0);
    ClassicalRegister c;
    Rng rng(7);
    run_circuit({delay(30e-6)}, r, c, dev, rng);
    EXPECT_NEAR(r.population(0, 1), std::exp(-1.0), 1e-6);
}

TEST(RunCircuit, FrameRzIsFreeAndExact) {
    DeviceParams dev;
    dev.t1 = {1e-6};
    dev.t2 = {1e-6};
    auto r = plus_state();
    ClassicalRegister c;
    Rng rng(8);
    run_circuit({frame_rz(0, M_PI / 2)}, r, c, dev, rng);
    // Rz(pi/2)|+> has coherence e^{i pi/2}/2 with no decay.
    EXPECT_NEAR(std::abs(r(1, 0)), 0.5, 1e-15);
    EXPECT_NEAR(std::arg(r(1, 0)), M_PI / 2, 1e-12);
}

TEST(RunCircuit, UndeclaredBitThrows) {
    DensityMatrix r(1);
    ClassicalRegister c(1);
    Rng rng(9);
    EXPECT_THROW(run_circuit({measure_to(0, 3)}, r, c, DeviceParams::noiseless(), rng), std::exception);
}

TEST(RunCircuit, BuildersRejectBadPayloads) {
    EXPECT_THROW(gate(Matrix(2, {1.0, 1.0, 0.0, 1.0}), {0}, 0.0), std::invalid_argument);
    EXPECT_THROW(gate(gates::X(), {0}, -1.0), std::invalid_argument);
    EXPECT_THROW(delay(-1e-9), std::invalid_argument);
}

TEST(RunCircuit, NoiselessAgreesWithStatevector) {
    std::mt19937_64 g(11);
    const auto dev = DeviceParams::noiseless();
    for (unsigned n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            Statevector sv(n);
            std::vector<Instruction> prog;
            for (int step = 0; step < 12; ++step) {
                const unsigned a = g() % n;
                if (n > 1 && g() % 3 == 0) {
                    unsigned b = g() % n;
                    if (b == a) b = (a + 1) % n;
                    prog.push_back(gate(gates::CNOT(), {a, b}, 280e-9));
                    sv.apply(gates::CNOT(), {a, b});
                } else {
                    const Matrix u = random_unitary_1q(g);
                    prog.push_back(gate(u, {a}, 40e-9));
                    sv.apply(u, {a});
                }
            }
            DensityMatrix r(n);
            ClassicalRegister c;
            Rng rng(trial);
            run_circuit(prog, r, c, dev, rng);
            EXPECT_LT(max_diff(r, sv.rho()), 1e-9);

            // Outcome frequencies of qubit 0 against the Born rule.
            const double p1 = sv.rho().population(0, 1);
            const int shots = 10000;
            int ones = 0;
            Rng mrng(100 + trial);
            for (int s = 0; s < shots; ++s) {
                DensityMatrix rr = r;
                ones += measure(rr, 0, mrng).bit;
            }
            const double sigma = std::sqrt(std::max(p1 * (1 - p1), 1e-12) / shots);
            EXPECT_NEAR(ones / double(shots), p1, 3 * sigma + 1e-12);
        }
    }
}

TEST(RunCircuit, SameSeedSameOutcomes) {
    const auto dev = DeviceParams::paper_defaults();
    const std::vector<Instruction> prog{gate(gates::H(), {0}, 40e-9), measure_to(0, 0), reset(0, 0),
                                        gate(gates::H(), {0}, 40e-9), measure_to(0, 1)};
    auto run = [&](std::uint64_t seed) {
        Rng rng(seed);
        std::vector<int> out;
        for (int i = 0; i < 100; ++i) {
            DensityMatrix r(1);
            ClassicalRegister c(2);
            run_circuit(prog, r, c, dev, rng);
            out.insert(out.end(), c.bits().begin(), c.bits().end());
        }
        return out;
    };
    EXPECT_EQ(run(42), run(42));
    EXPECT_NE(run(42), run(43));
}
