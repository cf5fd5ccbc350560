#include "dqc/readout/dressed_dephasing.hpp"

#include <gsl/gsl_fit.h>

#include <cmath>
#include <stdexcept>

#include "dqc/readout/bloch.hpp"

namespace dqc::readout {

std::vector<DephasingPoint> dressed_dephasing_signal(std::span<const double> delta_r, const ReadoutModel& model,
                                                     const DressedProtocol& protocol) {
    if (protocol.steps < 1 || protocol.drive < 0.0 || protocol.delay < 0.0) {
        throw std::invalid_argument("dressed_dephasing_signal: bad protocol");
    }
    const double t_end = protocol.drive + protocol.delay;
    std::vector<DephasingPoint> out;
    out.reserve(delta_r.size());
    for (double d : delta_r) {
        if (!std::isfinite(d)) {
            throw std::invalid_argument("dressed_dephasing_signal: non-finite detuning");
        }
        ReadoutModel m = model;
        m.delta_r = d;
        m.t_pulse = protocol.drive;
        // |alpha| <= 2 eps / |s| bounds |Omega|; refine the grid if needed.
        const double ag = 2.0 * m.epsilon / std::abs(cplx(m.kappa / 2.0, d + m.chi_of(0)));
        const double ae = 2.0 * m.epsilon / std::abs(cplx(m.kappa / 2.0, d + m.chi_of(1)));
        const double rate = std::max(m.kappa, 2.0 * std::abs(m.chi) * ag * ae);
        const double steps = std::max<double>(protocol.steps, std::ceil(t_end * 10.0 * rate * (1.0 + 1e-9)));
        const cplx z = bloch_endpoint(1.0, 0.0, m, t_end, t_end / steps);
        out.push_back({1.0 + z.real(), 1.0 - z.imag()});
    }
    return out;
}

DressedFit fit_dressed_dephasing(std::span<const DephasingCurve> curves, const ReadoutModel& base,
                                 const DressedFitOptions& options, const DressedProtocol& protocol) {
    if (curves.empty()) {
        throw std::invalid_argument("fit_dressed_dephasing: need at least one curve");
    }
    if (options.nbar_guess.size() != curves.size() || !(options.chi_guess > 0.0) || !(options.kappa_guess > 0.0)) {
        throw std::invalid_argument("fit_dressed_dephasing: guesses must be positive, one nbar per curve");
    }
    for (const auto& c : curves) {
        if (c.delta_r.size() != c.points.size() || c.delta_r.empty()) {
            throw std::invalid_argument("fit_dressed_dephasing: malformed curve");
        }
    }
    const std::size_t n_curves = curves.size();

    auto unpack = [&](std::span<const double> p, ReadoutModel& m, std::size_t curve) {
        m.chi = std::exp(p[0]);
        m.kappa = std::exp(p[1]);
        m.epsilon = epsilon_for_nbar(std::exp(p[2 + curve]), m);
    };

    const Objective cost = [&](std::span<const double> p) {
        double ss = 0.0;
        for (std::size_t c = 0; c < n_curves; ++c) {
            ReadoutModel m = base;
            unpack(p, m, c);
            const auto model_pts = dressed_dephasing_signal(curves[c].delta_r, m, protocol);
            for (std::size_t i = 0; i < model_pts.size(); ++i) {
                const double ex = model_pts[i].one_plus_x - curves[c].points[i].one_plus_x;
                const double ey = model_pts[i].one_minus_y - curves[c].points[i].one_minus_y;
                ss += ex * ex + ey * ey;
            }
        }
        return ss;
    };

    // 2 x 2 x 2 log grid around the guesses: chi, kappa, and a common photon
    // scale for all curves.
    const double ls = std::log(options.spread);
    std::vector<std::vector<double>> starts;
    for (int a = -1; a <= 1; a += 2) {
        for (int b = -1; b <= 1; b += 2) {
            for (int c = -1; c <= 1; c += 2) {
                std::vector<double> s{std::log(options.chi_guess) + a * ls, std::log(options.kappa_guess) + b * ls};
                for (double nb : options.nbar_guess) {
                    s.push_back(std::log(nb) + c * ls);
                }
                starts.push_back(std::move(s));
            }
        }
    }
    const SimplexResult r = minimize_multistart(cost, starts, options.simplex);

    DressedFit fit;
    fit.chi = std::exp(r.x[0]);
    fit.kappa = std::exp(r.x[1]);
    for (std::size_t c = 0; c < n_curves; ++c) {
        fit.nbar.push_back(std::exp(r.x[2 + c]));
    }
    fit.residual = r.value;
    fit.iterations = r.iterations;
    fit.converged = r.converged;
    return fit;
}

PowerLine fit_nbar_vs_power(std::span<const double> amplitudes, std::span<const double> nbars) {
    if (amplitudes.size() != nbars.size() || amplitudes.size() < 2) {
        throw std::invalid_argument("fit_nbar_vs_power: need >= 2 matching points");
    }
    std::vector<double> a2(amplitudes.size());
    for (std::size_t i = 0; i < a2.size(); ++i) {
        a2[i] = amplitudes[i] * amplitudes[i];
    }
    double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
    gsl_fit_linear(a2.data(), 1, nbars.data(), 1, a2.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
    return {c1, c0};
}

}  // namespace dqc::readout
