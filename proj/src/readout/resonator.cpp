#include "dqc/readout/resonator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqc::readout {

ReadoutModel ReadoutModel::device_defaults() {
    ReadoutModel m;
    m.chi = 2.0 * std::numbers::pi * 2.9e6;
    m.kappa = 2.0 * std::numbers::pi * 5.7e6;
    return m;
}

void ReadoutModel::validate() const {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("ReadoutModel: kappa must be positive");
    }
    if (!std::isfinite(chi) || !std::isfinite(epsilon) || !std::isfinite(delta_r)) {
        throw std::invalid_argument("ReadoutModel: chi, epsilon and delta_r must be finite");
    }
    if (!(n0 >= 0.0)) {
        throw std::invalid_argument("ReadoutModel: n0 must be >= 0");
    }
    if (t_pulse < 0.0 || t_gate < 0.0 || t_ramsey < 0.0 || gamma2 < 0.0) {
        throw std::invalid_argument("ReadoutModel: durations and gamma2 must be >= 0");
    }
}

namespace {

cplx drive_pole(int state, const ReadoutModel& m) { return {m.kappa / 2.0, m.delta_r + m.chi_of(state)}; }

cplx driven(double t, cplx s, double eps) {
    // -i eps (1 - e^{-ts}) / s, with expm1 for small ts.
    const cplx ts = t * s;
    const cplx one_minus = std::abs(ts) < 1e-3 ? -(ts * (-1.0 + ts * (0.5 - ts / 6.0))) : 1.0 - std::exp(-ts);
    return cplx(0.0, -eps) * one_minus / s;
}

}  // namespace

cplx resonator_alpha(double t, int state, const ReadoutModel& model) {
    if (t < 0.0) {
        throw std::invalid_argument("resonator_alpha: t must be >= 0");
    }
    const cplx s = drive_pole(state, model);
    if (t <= model.t_pulse) {
        return driven(t, s, model.epsilon);
    }
    return driven(model.t_pulse, s, model.epsilon) * std::exp(-(t - model.t_pulse) * s);
}

double epsilon_for_nbar(double nbar, const ReadoutModel& model) {
    if (nbar < 0.0) {
        throw std::invalid_argument("epsilon_for_nbar: nbar must be >= 0");
    }
    // |a_ss|^2 = eps^2 / (kappa^2/4 + chi^2) for either state at delta_r = 0.
    return std::sqrt(nbar * (model.kappa * model.kappa / 4.0 + model.chi * model.chi));
}

StarkDephasing stark_and_dephasing(double t, const ReadoutModel& model) {
    const cplx prod = std::conj(resonator_alpha(t, 0, model)) * resonator_alpha(t, 1, model);
    const double dchi = model.chi_of(0) - model.chi_of(1);
    return {dchi * prod.real(), dchi * prod.imag()};
}

}  // namespace dqc::readout
