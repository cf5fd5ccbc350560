#include "dqc/experiments/readout_fit.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dqc/experiments/seeding.hpp"
#include "dqc/readout/matched_filter.hpp"

namespace dqc::experiments {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

readout::Trace mean_trace(const readout::IQTraceSet& set) {
    readout::Trace m(set.traces.front().size());
    for (const auto& t : set.traces) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] += t[i];
        }
    }
    for (auto& v : m) {
        v /= static_cast<double>(set.traces.size());
    }
    return m;
}

}  // namespace

ReadoutFitResult readout_fit(const ExperimentConfig& c) {
    c.validate();
    const ReadoutFitConfig& rc = c.readout;
    ReadoutFitResult res;
    sim::Rng rng(derive_seed(c.seed, {kTagReadout}));
    std::mt19937_64 gen(rng.next_u64());
    std::normal_distribution<double> gauss(0.0, rc.noise > 0.0 ? rc.noise : 1.0);

    readout::ReadoutModel model = readout::ReadoutModel::device_defaults();
    model.gamma2 = 1.0 / c.device.t2_of(1);

    // Dressed dephasing, detuning -15..15 MHz.
    std::vector<double> det;
    for (int i = -30; i <= 30; ++i) {
        det.push_back(kTwoPi * 0.5e6 * i);
    }
    std::vector<readout::DephasingCurve> curves;
    for (double nb : rc.nbar) {
        readout::ReadoutModel m = model;
        m.epsilon = readout::epsilon_for_nbar(nb, m);
        readout::DephasingCurve curve{det, readout::dressed_dephasing_signal(det, m)};
        if (rc.noise > 0.0) {
            for (auto& p : curve.points) {
                p.one_plus_x += gauss(gen);
                p.one_minus_y += gauss(gen);
            }
        }
        curves.push_back(std::move(curve));
    }
    readout::DressedFitOptions opt;
    opt.chi_guess = kTwoPi * 2e6;
    opt.kappa_guess = kTwoPi * 8e6;
    opt.nbar_guess.assign(rc.nbar.size(), 0.1);
    res.dressed = readout::fit_dressed_dephasing(curves, model, opt);

    res.dephasing.columns = {"curve", "nbar_true", "delta_r_hz", "one_plus_x", "one_minus_y", "fit_one_plus_x",
                             "fit_one_minus_y"};
    for (std::size_t k = 0; k < curves.size(); ++k) {
        readout::ReadoutModel fm = model;
        fm.chi = res.dressed.chi;
        fm.kappa = res.dressed.kappa;
        fm.epsilon = readout::epsilon_for_nbar(res.dressed.nbar[k], fm);
        const auto fit = readout::dressed_dephasing_signal(det, fm);
        for (std::size_t i = 0; i < det.size(); ++i) {
            res.dephasing.rows.push_back({static_cast<double>(k), rc.nbar[k], det[i] / kTwoPi,
                                          curves[k].points[i].one_plus_x, curves[k].points[i].one_minus_y,
                                          fit[i].one_plus_x, fit[i].one_minus_y});
        }
    }

    // Amplitudes in units of the algorithm tone: nbar = 11 A^2.
    std::vector<double> amps;
    for (double nb : rc.nbar) {
        amps.push_back(std::sqrt(nb / kAlgorithmNbar));
    }
    if (amps.size() >= 2) {
        res.power_line = readout::fit_nbar_vs_power(amps, res.dressed.nbar);
        res.nbar_at_algorithm_power = res.power_line.nbar_at(1.0);
    }

    // Photon echo with chi and kappa from the dephasing fit.
    readout::ReadoutModel em = model;
    em.chi = res.dressed.chi;
    em.kappa = res.dressed.kappa;
    std::vector<double> t;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
        t.push_back(i * 10e-9);
        double v = readout::echo_signal(t.back(), rc.echo_alpha_c, rc.echo_n0, model.chi, model.kappa);
        if (rc.noise > 0.0) {
            v += gauss(gen);
        }
        y.push_back(v);
    }
    res.echo = readout::fit_photon_number(t, y, em);
    res.echo_data.columns = {"t_s", "signal", "fit"};
    for (std::size_t i = 0; i < t.size(); ++i) {
        res.echo_data.rows.push_back(
            {t[i], y[i], readout::echo_signal(t[i], res.echo.alpha_c, res.echo.n0, em.chi, em.kappa)});
    }

    res.n_crit = readout::n_crit(kTwoPi * kAnharmonicityHz, kTwoPi * (kQubitHz - kResonatorHz), model.chi);

    // Matched filter: 360 ns records, kernel over 4..324 ns, 300 ns tone.
    readout::ReadoutModel rm = model;
    rm.t_pulse = 300e-9;
    rm.epsilon = readout::epsilon_for_nbar(kAlgorithmNbar, rm);
    readout::SynthOptions so;
    so.n_traces = static_cast<std::size_t>(rc.traces);
    so.t1 = c.device.t1_of(1);
    const std::size_t begin = 2;
    const std::size_t end = 162;
    so.noise_sigma = readout::sigma_for_fisher(rm, so, rc.fisher, begin, end);
    res.noise_sigma = so.noise_sigma;
    const auto z = readout::synthesize_traces(rm, 0, so, rng);
    const auto o = readout::synthesize_traces(rm, 1, so, rng);
    const auto mf = readout::matched_filter(z, o, begin, end);
    const auto z2 = readout::synthesize_traces(rm, 0, so, rng);
    const auto o2 = readout::synthesize_traces(rm, 1, so, rng);
    res.fisher_separation = mf.fisher_separation();
    res.assignment_error = readout::assignment_error(z2, o2, mf);
    const auto m0 = mean_trace(z);
    const auto m1 = mean_trace(o);
    res.kernel.columns = {"t_s", "kernel_i", "kernel_q", "mean0_i", "mean0_q", "mean1_i", "mean1_q"};
    for (std::size_t i = 0; i < mf.kernel.size(); ++i) {
        res.kernel.rows.push_back({static_cast<double>(i) * so.sample_period, mf.kernel[i].real(), mf.kernel[i].imag(),
                                   m0[i].real(), m0[i].imag(), m1[i].real(), m1[i].imag()});
    }

    const double rss = res.dressed.residual;
    res.records = {
        {"chi_hz", res.dressed.chi / kTwoPi, 0.0, rss},
        {"kappa_hz", res.dressed.kappa / kTwoPi, 0.0, rss},
    };
    for (std::size_t k = 0; k < res.dressed.nbar.size(); ++k) {
        res.records.push_back({"nbar_" + std::to_string(k), res.dressed.nbar[k], 0.0, rss});
    }
    res.records.push_back({"nbar_at_algorithm_power", res.nbar_at_algorithm_power, 0.0, 0.0});
    res.records.push_back({"echo_alpha_c", res.echo.alpha_c, res.echo.alpha_c_stderr, res.echo.residual});
    res.records.push_back({"echo_n0", res.echo.n0, res.echo.n0_stderr, res.echo.residual});
    res.records.push_back({"echo_correction", res.echo.correction, 0.0, 0.0});
    res.records.push_back({"echo_n0_corrected", res.echo.n0_corrected, res.echo.n0_stderr * res.echo.correction,
                           res.echo.residual});
    res.records.push_back({"distinguishability", res.echo.distinguishability, 0.0, 0.0});
    res.records.push_back({"n_crit", res.n_crit, 0.0, 0.0});
    res.records.push_back({"fisher_separation", res.fisher_separation, 0.0, 0.0});
    res.records.push_back({"assignment_error", res.assignment_error, 0.0, 0.0});
    return res;
}

}  // namespace dqc::experiments
