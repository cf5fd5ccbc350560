#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqc/readout/bloch.hpp"
#include "dqc/readout/csv_io.hpp"
#include "dqc/readout/dressed_dephasing.hpp"
#include "dqc/readout/matched_filter.hpp"
#include "dqc/readout/photon_echo.hpp"
#include "dqc/readout/resonator.hpp"
#include "dqc/readout/simplex.hpp"

using namespace dqc::readout;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

ReadoutModel driven(double nbar = 2.0) {
    auto m = ReadoutModel::device_defaults();
    m.epsilon = epsilon_for_nbar(nbar, m);
    return m;
}

double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Simpson integral of i Omega - gamma2 - Gamma on a fine grid.
std::complex<double> phase_integral(const ReadoutModel& m, double t_end, int n) {
    std::complex<double> s = 0.0;
    const double h = t_end / n;
    for (int i = 0; i <= n; ++i) {
        const auto sd = stark_and_dephasing(i * h, m);
        const std::complex<double> f{-m.gamma2 - sd.gamma, sd.omega};
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        s += w * f;
    }
    return s * h / 3.0;
}

}  // namespace

TEST(Resonator, StartsEmpty) {
    const auto m = driven();
    EXPECT_EQ(resonator_alpha(0.0, 0, m), cplx{});
    EXPECT_EQ(resonator_alpha(0.0, 1, m), cplx{});
}

TEST(Resonator, SteadyState) {
    auto m = driven();
    m.t_pulse = 1e-3;
    m.delta_r = kTwoPi * 1.3e6;
    for (int s : {0, 1}) {
        const cplx expect = cplx{0, -m.epsilon} / cplx{m.kappa / 2, m.delta_r + m.chi_of(s)};
        EXPECT_LT(std::abs(resonator_alpha(50e-6, s, m) - expect), 1e-6 * std::abs(expect));
    }
}

TEST(Resonator, RingsDownAndIsContinuous) {
    const auto m = driven();
    for (int s : {0, 1}) {
        EXPECT_LT(std::abs(resonator_alpha(m.t_pulse + 20e-6, s, m)), 1e-12);
        const auto left = resonator_alpha(m.t_pulse, s, m);
        const auto right = resonator_alpha(std::nextafter(m.t_pulse, 1.0), s, m);
        EXPECT_LT(std::abs(left - right), 1e-12);
    }
}

TEST(Resonator, NbarCalibration) {
    auto m = driven(11.0);
    m.t_pulse = 1e-3;
    EXPECT_NEAR(std::norm(resonator_alpha(20e-6, 0, m)), 11.0, 1e-6);
}

TEST(Stark, VanishesWithoutDriveOrCoupling) {
    auto m = ReadoutModel::device_defaults();
    auto sd = stark_and_dephasing(200e-9, m);
    EXPECT_EQ(sd.omega, 0.0);
    EXPECT_EQ(sd.gamma, 0.0);
    m = driven();
    m.chi = 0.0;
    sd = stark_and_dephasing(200e-9, m);
    EXPECT_EQ(sd.omega, 0.0);
    EXPECT_EQ(sd.gamma, 0.0);
}

TEST(Stark, SteadyStateClosedForm) {
    auto m = driven(3.0);
    m.t_pulse = 1e-3;
    const auto sd = stark_and_dephasing(30e-6, m);
    const double c = m.chi, k = m.kappa, e2 = m.epsilon * m.epsilon;
    const double d = std::pow(k * k / 4 + c * c, 2);
    EXPECT_NEAR(sd.omega, -2 * c * e2 * (k * k / 4 - c * c) / d, 1e-6 * std::abs(sd.omega));
    EXPECT_NEAR(sd.gamma, 2 * c * c * e2 * k / d, 1e-6 * sd.gamma);
}

TEST(Stark, DephasingNonNegativeWhileDriven) {
    const auto m = driven();
    double integral = 0.0;
    const double h = 1e-9;
    for (int i = 0; i <= 1500; ++i) {
        const double g = stark_and_dephasing(i * h, m).gamma;
        if (i * h <= m.t_pulse) {
            EXPECT_GE(g, 0.0) << i;
        }
        // During ring-down the two fields precess at +-chi and the rate
        // oscillates, but the accumulated dephasing never goes negative.
        integral += g * h;
        EXPECT_GE(integral, 0.0) << i;
    }
}

TEST(Bloch, ConstantWithoutDriveOrDecay) {
    auto m = ReadoutModel::device_defaults();
    const auto tr = bloch_integrate(0.6, 0.8, m, 900e-9, 2e-9);
    EXPECT_NEAR(tr.x.back(), 0.6, 1e-15);
    EXPECT_NEAR(tr.y.back(), 0.8, 1e-15);
}

TEST(Bloch, IntrinsicDecay) {
    auto m = ReadoutModel::device_defaults();
    m.gamma2 = 1 / 2e-6;
    const auto tr = bloch_integrate(1.0, 0.0, m, 1e-6, 1e-9);
    for (std::size_t i = 0; i < tr.t.size(); i += 97) {
        EXPECT_NEAR(tr.x[i], std::exp(-m.gamma2 * tr.t[i]), 1e-6 * std::exp(-m.gamma2 * tr.t[i]));
    }
}

TEST(Bloch, MatchesPhaseIntegral) {
    auto m = driven(4.0);
    m.gamma2 = 1 / 40e-6;
    m.delta_r = kTwoPi * 2e6;
    const double t_end = 900e-9;
    const auto z = bloch_endpoint(1.0, 0.0, m, t_end, 1e-9);
    const auto expect = std::exp(phase_integral(m, t_end, 20000));
    EXPECT_LT(std::abs(z - expect), 1e-6);
}

TEST(Bloch, NormOnlyDecaysThroughDamping) {
    auto m = driven(4.0);
    const auto tr = bloch_integrate(1.0, 0.0, m, 600e-9, 0.5e-9);
    for (std::size_t i = 1; i < tr.t.size(); ++i) {
        EXPECT_LE(std::hypot(tr.x[i], tr.y[i]), std::hypot(tr.x[i - 1], tr.y[i - 1]) + 1e-12);
    }
}

TEST(Bloch, RejectsLargeSteps) {
    const auto m = driven();
    const double h = bloch_max_step(m, 900e-9);
    EXPECT_GT(h, 0.0);
    EXPECT_THROW(bloch_integrate(1.0, 0.0, m, 900e-9, 2 * h), std::invalid_argument);
}

TEST(DressedDephasing, FlatWithoutDrive) {
    auto m = ReadoutModel::device_defaults();
    m.gamma2 = 1 / 41.92e-6;
    const std::vector<double> det{-1e7, 0.0, 3e7};
    const auto pts = dressed_dephasing_signal(det, m);
    const double x = std::exp(-m.gamma2 * 900e-9);
    for (const auto& p : pts) {
        EXPECT_NEAR(p.one_plus_x, 1 + x, 1e-9);
        EXPECT_NEAR(p.one_minus_y, 1.0, 1e-9);
    }
}

TEST(DressedDephasing, SinglePhotonCurveHasFeatures) {
    auto m = driven(0.04);
    std::vector<double> det;
    for (int i = -30; i <= 30; ++i) det.push_back(kTwoPi * 0.5e6 * i);
    const auto pts = dressed_dephasing_signal(det, m);
    double lo = 10, hi = -10;
    for (const auto& p : pts) {
        lo = std::min(lo, p.one_minus_y);
        hi = std::max(hi, p.one_minus_y);
    }
    EXPECT_GT(hi - lo, 0.05);
}

TEST(DressedDephasing, XSymmetricInDetuning) {
    auto m = driven(0.28);
    m.gamma2 = 0.0;
    std::vector<double> det;
    for (int i = -20; i <= 20; ++i) det.push_back(kTwoPi * 0.7e6 * i);
    const auto pts = dressed_dephasing_signal(det, m);
    for (std::size_t i = 0; i < det.size(); ++i) {
        EXPECT_NEAR(pts[i].one_plus_x, pts[det.size() - 1 - i].one_plus_x, 1e-9);
    }
}

TEST(PowerLine, ExtrapolatesToAlgorithmPower) {
    const double a[] = {std::sqrt(0.04 / 11), std::sqrt(0.28 / 11)};
    const double n[] = {0.04, 0.28};
    const auto line = fit_nbar_vs_power(a, n);
    EXPECT_NEAR(line.nbar_at(1.0), 11.0, 1e-9);
}

TEST(Echo, Limits) {
    const double chi = kTwoPi * 2.9e6, kappa = kTwoPi * 5.7e6;
    EXPECT_NEAR(echo_signal(0.0, 0.8, 0.0, chi, kappa), 0.1, 1e-15);
    EXPECT_NEAR(echo_signal(1e-3, 0.8, 3.8, chi, kappa), 0.1, 1e-12);
    // chi = 0: finite and at the empty-resonator value.
    EXPECT_NEAR(echo_signal(0.0, 0.8, 3.8, 0.0, kappa), 0.1, 1e-15);
}

TEST(Echo, EnvelopeFollowsRingDown) {
    const double chi = kTwoPi * 2.9e6, kappa = kTwoPi * 5.7e6;
    const double beta = 4 * chi * chi / (kappa * kappa + 4 * chi * chi);
    const double base = 0.1;
    double prev = 1.0;
    for (double u = 3; u <= 12; u += 0.5) {
        const double t = u / kappa;
        const double dev = std::abs(echo_signal(t, 0.8, 3.8, chi, kappa) - base);
        EXPECT_LT(dev, prev);
        prev = dev;
        // Leading order 0.4 beta n(t).
        EXPECT_NEAR(dev / std::exp(-kappa * t), 0.4 * beta * 3.8, 0.25 * 0.4 * beta * 3.8);
    }
}

TEST(Echo, FitRoundTrip) {
    auto m = ReadoutModel::device_defaults();
    std::vector<double> t, y;
    for (int i = 0; i < 60; ++i) {
        t.push_back(i * 10e-9);
        y.push_back(echo_signal(t.back(), 0.8, 3.8, m.chi, m.kappa));
    }
    const auto f = fit_photon_number(t, y, m);
    EXPECT_TRUE(f.converged);
    EXPECT_NEAR(f.alpha_c, 0.8, 1e-6);
    EXPECT_NEAR(f.n0, 3.8, 1e-6);
    EXPECT_NEAR(f.correction, 2.928, 0.01);
    EXPECT_NEAR(f.n0_corrected, f.n0 * f.correction, 1e-12);
    const double beta = 4 * m.chi * m.chi / (m.kappa * m.kappa + 4 * m.chi * m.chi);
    EXPECT_NEAR(f.distinguishability, 4 * beta * f.n0, 1e-9);
}

TEST(NCrit, DeviceValue) {
    const double v = n_crit(-kTwoPi * 343.1e6, kTwoPi * (5.3634e9 - 7.01325e9), kTwoPi * 2.9e6);
    EXPECT_NEAR(v, 23.0, 2.3);
    EXPECT_NEAR(n_crit(-kTwoPi * 343.1e6, kTwoPi * (5.3634e9 - 7.01325e9), kTwoPi * 5.8e6), v / 2, 1e-9);
    EXPECT_THROW(n_crit(-1.0, 2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(n_crit(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Hellinger, Properties) {
    const double p[] = {0.3, 0.7}, q[] = {0.6, 0.4};
    const double a[] = {1, 0}, b[] = {0, 1};
    EXPECT_EQ(hellinger_sq(p, p), 0.0);
    EXPECT_NEAR(hellinger_sq(a, b), 1.0, 1e-15);
    EXPECT_NEAR(hellinger_sq(p, q), hellinger_sq(q, p), 1e-15);
    EXPECT_LE(hellinger_sq(p, q), 1.0);
    const double p1 = 0.0165;
    const double r[] = {1 - p1, p1};
    EXPECT_NEAR(hellinger_sq(r, a), 1 - std::sqrt(1 - p1), 1e-15);
    const double three[] = {0.2, 0.3, 0.5};
    EXPECT_THROW(hellinger_sq(p, three), std::invalid_argument);
}

TEST(MatchedFilter, DegenerateMeansThrow) {
    auto m = driven(11.0);
    m.chi = 0.0;
    dqc::sim::Rng rng(1);
    SynthOptions o;
    o.n_traces = 200;
    const auto z = synthesize_traces(m, 0, o, rng);
    auto one = z;
    one.label = 1;
    EXPECT_THROW(matched_filter(z, one), std::invalid_argument);
}

TEST(MatchedFilter, NoSeparationIsCoinFlip) {
    auto m = driven(11.0);
    m.t_pulse = 300e-9;
    SynthOptions o;
    o.n_traces = 2000;
    o.noise_sigma = sigma_for_fisher(m, o, 1e-4, 0, 180);
    dqc::sim::Rng rng(2);
    const auto f = matched_filter(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng));
    const double err = assignment_error(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), f);
    EXPECT_NEAR(err, 0.5, 0.05);
}

TEST(MatchedFilter, MeanTracesDiscriminate) {
    auto m = driven(11.0);
    m.t_pulse = 300e-9;
    SynthOptions o;
    o.n_traces = 500;
    o.noise_sigma = 0.5;
    dqc::sim::Rng rng(3);
    const auto z = synthesize_traces(m, 0, o, rng);
    const auto one = synthesize_traces(m, 1, o, rng);
    const auto f = matched_filter(z, one);
    Trace mean0(z.traces[0].size()), mean1(mean0.size());
    for (std::size_t i = 0; i < mean0.size(); ++i) {
        mean0[i] = resonator_alpha(i * o.sample_period, 0, m);
        mean1[i] = resonator_alpha(i * o.sample_period, 1, m);
    }
    EXPECT_EQ(discriminate(mean0, f.kernel, f.threshold), 0);
    EXPECT_EQ(discriminate(mean1, f.kernel, f.threshold), 1);
}

TEST(MatchedFilter, HeldOutErrorMatchesGaussianTail) {
    auto m = driven(11.0);
    m.t_pulse = 300e-9;
    SynthOptions o;
    o.n_traces = 5000;
    const double fisher = 4.0;
    o.noise_sigma = sigma_for_fisher(m, o, fisher, 0, 180);
    dqc::sim::Rng rng(4);
    const auto f = matched_filter(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), 0, 180);
    EXPECT_NEAR(f.fisher_separation(), fisher, 0.3);
    const double predicted = normal_tail(std::sqrt(fisher / 2));
    const double err = assignment_error(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), f);
    EXPECT_NEAR(err, predicted, 3 * std::sqrt(predicted * (1 - predicted) / (2.0 * o.n_traces)) + 0.005);
}

TEST(MatchedFilter, ScoreAboveThresholdForGround) {
    // Fisher 46 without decay: a ground trace lands above threshold with
    // probability 1 - Q(sqrt(23)).
    auto m = driven(11.0);
    m.t_pulse = 300e-9;
    SynthOptions o;
    o.n_traces = 2000;
    o.noise_sigma = sigma_for_fisher(m, o, 46, 2, 162);
    dqc::sim::Rng rng(5);
    const auto f = matched_filter(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), 2, 162);
    const auto held = synthesize_traces(m, 0, o, rng);
    int above = 0;
    for (const auto& tr : held.traces) above += filter_score(tr, f.kernel) > f.threshold;
    EXPECT_GT(above / double(held.traces.size()), 0.99);
    EXPECT_GT(1 - normal_tail(std::sqrt(23.0)), 0.99);
}

TEST(MatchedFilter, DecayLimitedErrorNearDeviceLevel) {
    auto m = driven(11.0);
    m.t_pulse = 300e-9;
    SynthOptions o;
    o.n_traces = 20000;
    o.t1 = 49.23e-6;
    o.noise_sigma = sigma_for_fisher(m, o, 46, 2, 162);
    dqc::sim::Rng rng(6);
    const auto f = matched_filter(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), 2, 162);
    const double err = assignment_error(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng), f);
    EXPECT_GT(err, 3e-3 / 3);
    EXPECT_LT(err, 3e-3 * 3);
}

TEST(MatchedFilter, TooFewTraces) {
    const auto m = driven(11.0);
    SynthOptions o;
    o.n_traces = 50;
    dqc::sim::Rng rng(7);
    EXPECT_THROW(matched_filter(synthesize_traces(m, 0, o, rng), synthesize_traces(m, 1, o, rng)),
                 std::invalid_argument);
}

TEST(Simplex, Rosenbrock) {
    const Objective f = [](std::span<const double> x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    const auto r = minimize_multistart(f, {{-1.2, 1.0}, {2.0, 2.0}});
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(CsvIo, RoundTripAndErrors) {
    const auto t = parse_csv("# comment\na,b\n1,2.5\n3,-4e-3\n");
    EXPECT_EQ(t.columns, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(t.values("b")[1], -4e-3);
    EXPECT_THROW(t.column("c"), std::out_of_range);
    EXPECT_THROW(parse_csv("a,b\n1\n"), std::runtime_error);
    const std::string js = fit_report_json({{"chi", 1.0, 0.1, 0.0}});
    EXPECT_NE(js.find("\"parameter\""), std::string::npos);
    EXPECT_NE(js.find("\"stderr\""), std::string::npos);
}
