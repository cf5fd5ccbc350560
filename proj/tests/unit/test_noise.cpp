#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dqc/noise/channels.hpp"
#include "dqc/noise/measurement.hpp"
#include "dqc/sim/gates.hpp"

using namespace dqc;
using noise::DeviceParams;
using sim::DensityMatrix;
using sim::Matrix;

namespace {

const unsigned q0[] = {0};
const double kInf = std::numeric_limits<double>::infinity();

DensityMatrix excited() {
    DensityMatrix r(1);
    sim::apply_unitary(r, sim::gates::X(), q0);
    return r;
}

DensityMatrix plus() {
    DensityMatrix r(1);
    sim::apply_unitary(r, sim::gates::H(), q0);
    return r;
}

DensityMatrix random_state(unsigned n, std::mt19937_64& g) {
    std::normal_distribution<double> d;
    std::vector<sim::cplx> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& x : a) {
        x = {d(g), d(g)};
        norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return DensityMatrix::from_pure(a);
}

double max_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) e = std::max(e, std::abs(a.data()[i] - b.data()[i]));
    return e;
}

}  // namespace

TEST(AmplitudeDamping, ZeroTimeIsIdentity) {
    const auto k = noise::amplitude_damping_kraus(0.0, 50e-6);
    auto r = plus();
    const auto before = r;
    sim::apply_kraus(r, k, q0);
    EXPECT_LT(max_diff(r, before), 1e-15);
}

TEST(AmplitudeDamping, LongTimeEmptiesExcited) {
    auto r = excited();
    sim::apply_kraus(r, noise::amplitude_damping_kraus(1.0, 50e-6), q0);
    EXPECT_NEAR(r.population(0, 0), 1.0, 1e-12);
}

TEST(AmplitudeDamping, OneT1) {
    auto r = excited();
    sim::apply_kraus(r, noise::amplitude_damping_kraus(50e-6, 50e-6), q0);
    EXPECT_NEAR(r.population(0, 1), std::exp(-1.0), 1e-12);
}

TEST(AmplitudeDamping, CompositionLaw) {
    const double t1 = 37e-6;
    for (double a : {0.0, 1e-7, 3e-6, 20e-6}) {
        for (double b : {1e-8, 5e-6, 40e-6}) {
            for (int basis = 0; basis < 4; ++basis) {
                // |0>, |1>, |+>, |+i>
                DensityMatrix r(1);
                if (basis == 1) r = excited();
                if (basis >= 2) r = plus();
                if (basis == 3) sim::apply_unitary(r, sim::gates::S(), q0);
                auto split = r;
                sim::apply_kraus(split, noise::amplitude_damping_kraus(a, t1), q0);
                sim::apply_kraus(split, noise::amplitude_damping_kraus(b, t1), q0);
                sim::apply_kraus(r, noise::amplitude_damping_kraus(a + b, t1), q0);
                EXPECT_LT(max_diff(r, split), 1e-9);
            }
        }
    }
}

TEST(PureDephasing, T1LimitedIsIdentity) {
    const auto k = noise::pure_dephasing_kraus(10e-6, 30e-6, 60e-6);
    auto r = plus();
    const auto before = r;
    sim::apply_kraus(r, k, q0);
    EXPECT_LT(max_diff(r, before), 1e-15);
}

TEST(PureDephasing, LongTimeFullyMixes) {
    auto r = plus();
    sim::apply_kraus(r, noise::pure_dephasing_kraus(1.0, kInf, 20e-6), q0);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
}

TEST(PureDephasing, OneTphi) {
    const double t1 = 60e-6;
    const double t2 = 40e-6;
    const double tphi = 1.0 / (1.0 / t2 - 1.0 / (2 * t1));
    auto r = plus();
    sim::apply_kraus(r, noise::pure_dephasing_kraus(tphi, t1, t2), q0);
    EXPECT_NEAR(r(0, 1).real(), 0.5 * std::exp(-1.0), 1e-12);
}

TEST(PureDephasing, RejectsT2AboveTwiceT1) {
    EXPECT_THROW(noise::pure_dephasing_kraus(1e-6, 10e-6, 21e-6), std::invalid_argument);
}

TEST(Depolarizing, ZeroIsIdentityOneIsMixed) {
    auto r = plus();
    const auto before = r;
    sim::apply_kraus(r, noise::depolarizing_kraus(0.0, 1), q0);
    EXPECT_LT(max_diff(r, before), 1e-15);
    sim::apply_kraus(r, noise::depolarizing_kraus(1.0, 1), q0);
    EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-15);
}

TEST(Depolarizing, TwoQubitTracePreserving) {
    const auto k = noise::depolarizing_kraus(1.55e-2, 2);
    EXPECT_LT(sim::completeness_error(k), 1e-12);
    std::mt19937_64 g(1);
    for (int i = 0; i < 10; ++i) {
        auto r = random_state(2, g);
        const unsigned both[] = {1, 0};
        sim::apply_kraus(r, k, both);
        EXPECT_NEAR(r.trace(), 1.0, 1e-12);
        EXPECT_TRUE(r.check_invariants().ok());
    }
    EXPECT_THROW(noise::depolarizing_kraus(0.1, 3), std::invalid_argument);
}

TEST(Channels, AllSetsComplete) {
    for (double t : {0.0, 1e-9, 1e-6, 1e-3}) {
        EXPECT_LT(sim::completeness_error(noise::amplitude_damping_kraus(t, 50e-6)), 1e-9);
        EXPECT_LT(sim::completeness_error(noise::pure_dephasing_kraus(t, 50e-6, 40e-6)), 1e-9);
    }
    for (double p : {0.0, 0.01, 0.5, 1.0}) {
        EXPECT_LT(sim::completeness_error(noise::depolarizing_kraus(p, 1)), 1e-9);
        EXPECT_LT(sim::completeness_error(noise::depolarizing_kraus(p, 2)), 1e-9);
        EXPECT_LT(sim::completeness_error(noise::excitation_kraus(p)), 1e-9);
    }
}

TEST(NoisyMeasure, PerfectAssignmentMatchesMeasure) {
    DeviceParams dev = DeviceParams::noiseless();
    sim::Rng a(9), b(9);
    for (int i = 0; i < 1000; ++i) {
        auto r1 = plus();
        auto r2 = plus();
        const auto o = noise::noisy_measure(r1, 0, dev, a);
        const auto m = sim::measure(r2, 0, b);
        ASSERT_EQ(o.reported, m.bit);
        ASSERT_EQ(o.actual, m.bit);
    }
}

TEST(NoisyMeasure, AssignmentRates) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.p_assign_1given0 = 0.0062;
    dev.p_assign_0given1 = 0.0104;
    sim::Rng rng(10);
    const int n = 100000;
    int ones_from_0 = 0;
    int zeros_from_1 = 0;
    for (int i = 0; i < n; ++i) {
        DensityMatrix g(1);
        ones_from_0 += noise::noisy_measure(g, 0, dev, rng).reported;
        auto e = excited();
        zeros_from_1 += 1 - noise::noisy_measure(e, 0, dev, rng).reported;
    }
    EXPECT_NEAR(ones_from_0 / double(n), 0.0062, 3 * std::sqrt(0.0062 * 0.9938 / n));
    EXPECT_NEAR(zeros_from_1 / double(n), 0.0104, 3 * std::sqrt(0.0104 * 0.9896 / n));
}

TEST(ConditionalReset, PerfectResetReachesGround) {
    DeviceParams dev = DeviceParams::noiseless();
    auto r = excited();
    noise::conditional_reset(r, 0, 1, dev);
    EXPECT_NEAR(r.population(0, 0), 1.0, 1e-15);
}

TEST(ConditionalReset, ExcitationLeavesPReset) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.p_reset_excited = 0.01;
    DensityMatrix r(1);
    noise::conditional_reset(r, 0, 0, dev);
    EXPECT_NEAR(r.population(0, 1), 0.01, 1e-15);
    auto e = excited();
    noise::conditional_reset(e, 0, 1, dev);
    EXPECT_NEAR(e.population(0, 1), 0.01, 1e-15);
}

TEST(ConditionalReset, MisassignedExcitedStaysExcited) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.p_reset_excited = 0.01;
    auto r = excited();
    noise::conditional_reset(r, 0, 0, dev);
    // No flip: the excitation channel only acts on |0>, so |1> is untouched.
    EXPECT_NEAR(r.population(0, 1), 1.0, 1e-15);
}

TEST(ConditionalReset, SpectatorIdlesForLatency) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.t1 = {20e-6, kInf};
    dev.t2 = {40e-6, kInf};
    dev.meas_reset_latency = 1.4e-6;
    DensityMatrix r(2);
    const unsigned both[] = {0, 1};
    sim::apply_unitary(r, sim::kron(sim::gates::X(), sim::gates::X()), both);
    noise::conditional_reset(r, 1, 1, dev);
    EXPECT_NEAR(r.population(0, 1), std::exp(-1.4 / 20.0), 1e-12);
    EXPECT_NEAR(r.population(1, 0), 1.0, 1e-12);
}

TEST(ConditionalReset, FlipDelayDecaysResetQubit) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.t1 = {10e-6};
    dev.t2 = {20e-6};
    dev.pointer_flip_delay = 1e-6;
    auto r = excited();
    noise::conditional_reset(r, 0, 1, dev);
    // Decay before the flip leaves 1 - e^{-0.1} in |0>, which the X raises.
    EXPECT_NEAR(r.population(0, 1), 1.0 - std::exp(-0.1), 1e-12);
}

TEST(DeviceParams, Validation) {
    DeviceParams d;
    EXPECT_NO_THROW(d.validate());
    d.t2 = {200e-6, 200e-6};
    EXPECT_THROW(d.validate(), std::invalid_argument);
    d = DeviceParams{};
    d.p_assign_0given1 = 1.5;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    d = DeviceParams{};
    d.cnot_len = -1;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    EXPECT_NO_THROW(DeviceParams::noiseless().validate());
}

TEST(DeviceParams, PaperDefaults) {
    const auto d = DeviceParams::paper_defaults();
    EXPECT_DOUBLE_EQ(d.t1_of(0), 68.20e-6);
    EXPECT_DOUBLE_EQ(d.cnot_len, 280e-9);
    EXPECT_DOUBLE_EQ(d.meas_reset_latency, 1.4e-6);
    EXPECT_DOUBLE_EQ(d.single_gate_len, 40e-9);
    EXPECT_DOUBLE_EQ(d.t1_of(5), d.t1_of(1));
}

TEST(GateNoise, SpectatorsAndTargetsRelax) {
    DeviceParams dev = DeviceParams::noiseless();
    dev.t1 = {10e-6};
    dev.t2 = {20e-6};
    DensityMatrix r(2);
    const unsigned both[] = {0, 1};
    sim::apply_unitary(r, sim::kron(sim::gates::X(), sim::gates::X()), both);
    noise::apply_gate_noise(r, q0, 1e-6, dev);
    EXPECT_NEAR(r.population(0, 1), std::exp(-0.1), 1e-12);
    EXPECT_NEAR(r.population(1, 1), std::exp(-0.1), 1e-12);
}
