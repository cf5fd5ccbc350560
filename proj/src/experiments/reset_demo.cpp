#include "dqc/experiments/reset_demo.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dqc/experiments/seeding.hpp"
#include "dqc/noise/channels.hpp"
#include "dqc/noise/measurement.hpp"
#include "dqc/readout/photon_echo.hpp"
#include "dqc/sim/gates.hpp"

namespace dqc::experiments {

namespace {

noise::DeviceParams pointer_device(const ResetDemoConfig& r, double p_reset) {
    noise::DeviceParams d;
    d.t1 = {r.pointer_t1};
    d.t2 = {r.pointer_t2};
    d.p_assign_1given0 = r.p_assign_1given0;
    d.p_assign_0given1 = r.p_assign_0given1;
    d.p_reset_excited = p_reset;
    d.pointer_flip_delay = r.flip_delay;
    d.meas_reset_latency = r.cycle;
    d.validate();
    return d;
}

sim::DensityMatrix plus_state() {
    sim::DensityMatrix s(1);
    const unsigned q[1] = {0};
    sim::apply_unitary(s, sim::gates::H(), q);
    return s;
}

// Rest of the cycle after the flip.
void finish_cycle(sim::DensityMatrix& s, const ResetDemoConfig& r, const noise::DeviceParams& d) {
    noise::apply_relaxation(s, 0, std::max(0.0, r.cycle - r.flip_delay), d);
}

double reported_p1(const sim::DensityMatrix& s, const noise::DeviceParams& d) {
    const double p1 = std::clamp(s.population(0, 1), 0.0, 1.0);
    return p1 * (1.0 - d.p_assign_0given1) + (1.0 - p1) * d.p_assign_1given0;
}

}  // namespace

namespace {

std::vector<sim::DensityMatrix> cycle_states(const ResetDemoConfig& r, const noise::DeviceParams& d) {
    const double rate[2][2] = {{1.0 - d.p_assign_1given0, d.p_assign_1given0},
                               {d.p_assign_0given1, 1.0 - d.p_assign_0given1}};
    sim::DensityMatrix s = plus_state();
    std::vector<sim::DensityMatrix> out;
    for (int c = 0; c < r.cycles; ++c) {
        // Measurement outcomes are not used later, so branches merge again.
        std::array<double, 4> acc{};
        for (int a = 0; a < 2; ++a) {
            sim::DensityMatrix proj = s;
            const double w = sim::project(proj, 0, a);
            if (w <= 0.0) {
                continue;
            }
            for (int rep = 0; rep < 2; ++rep) {
                sim::DensityMatrix b = proj;
                noise::conditional_reset(b, 0, rep, d);
                const double k = w * rate[a][rep];
                for (std::size_t i = 0; i < 4; ++i) {
                    acc[i] += k * b.data()[i].real();
                }
            }
        }
        // Reset leaves a diagonal state: projection kills coherences and the
        // channels involved do not create them.
        s = sim::DensityMatrix::from_matrix(1, {acc[0], 0.0, 0.0, acc[3]}, 1e-9);
        finish_cycle(s, r, d);
        out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<double> reset_demo_exact(const ResetDemoConfig& r, double p_reset) {
    std::vector<double> out;
    for (const auto& s : cycle_states(r, pointer_device(r, p_reset))) {
        out.push_back(std::clamp(s.population(0, 1), 0.0, 1.0));
    }
    return out;
}

std::vector<double> reset_demo_reported(const ResetDemoConfig& r, double p_reset) {
    const noise::DeviceParams d = pointer_device(r, p_reset);
    std::vector<double> out;
    for (const auto& s : cycle_states(r, d)) {
        out.push_back(reported_p1(s, d));
    }
    return out;
}

double calibrate_reset_error(const ResetDemoConfig& r) {
    ResetDemoConfig one = r;
    one.cycles = 1;
    auto f = [&](double p) { return reset_demo_exact(one, p)[0] - r.first_cycle_target; };
    double lo = 0.0;
    double hi = 0.5;
    if (f(lo) >= 0.0) {
        return 0.0;
    }
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ResetDemoResult reset_demo(const ExperimentConfig& c) {
    c.validate();
    const ResetDemoConfig& r = c.reset_demo;
    ResetDemoResult res;
    res.p_reset = r.calibrate ? calibrate_reset_error(r) : r.p_reset;
    res.shots = r.shots;
    const noise::DeviceParams d = pointer_device(r, res.p_reset);
    const std::vector<double> exact = reset_demo_exact(r, res.p_reset);
    const std::vector<double> reported = reset_demo_reported(r, res.p_reset);

    std::vector<long> ones(static_cast<std::size_t>(r.cycles), 0);
    sim::Rng rng(derive_seed(c.seed, {kTagResetDemo}));
    for (long shot = 0; shot < r.shots; ++shot) {
        sim::DensityMatrix s = plus_state();
        for (int cyc = 0; cyc <= r.cycles; ++cyc) {
            const noise::NoisyOutcome o = noise::noisy_measure(s, 0, d, rng);
            const int rep = o.reported;
            if (cyc > 0) {
                ones[static_cast<std::size_t>(cyc - 1)] += o.actual;
            }
            if (cyc == r.cycles) {
                break;
            }
            noise::conditional_reset(s, 0, rep, d);
            finish_cycle(s, r, d);
        }
    }
    for (int cyc = 0; cyc < r.cycles; ++cyc) {
        ResetCycle rc;
        rc.cycle = cyc + 1;
        rc.p1_exact = exact[static_cast<std::size_t>(cyc)];
        rc.p1_reported = reported[static_cast<std::size_t>(cyc)];
        rc.p1_sampled = static_cast<double>(ones[static_cast<std::size_t>(cyc)]) / static_cast<double>(r.shots);
        rc.p1_stderr = std::sqrt(rc.p1_sampled * (1.0 - rc.p1_sampled) / static_cast<double>(r.shots));
        const double p[2] = {1.0 - rc.p1_exact, rc.p1_exact};
        const double q[2] = {1.0, 0.0};
        rc.hellinger_sq = readout::hellinger_sq(p, q);
        rc.fidelity = (1.0 - rc.hellinger_sq) * (1.0 - rc.hellinger_sq);
        res.cycles.push_back(rc);
    }
    return res;
}

}  // namespace dqc::experiments
