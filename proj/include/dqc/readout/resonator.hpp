#pragma once

#include <complex>

namespace dqc::readout {

using cplx = std::complex<double>;

/// Dispersive readout parameters. Angular quantities in rad/s, times in s.
/// The qubit-state pulls are chi_g = -chi and chi_e = +chi.
struct ReadoutModel {
    double chi = 0.0;
    double kappa = 1.0;
    double epsilon = 0.0;   // drive amplitude, rad/s
    double delta_r = 0.0;   // drive detuning from the bare resonator
    double gamma2 = 0.0;    // intrinsic qubit dephasing rate, 1/s
    double t_pulse = 400e-9;
    double phi0 = -1.5707963267948966;
    double n0 = 0.0;        // photons left at the end of the echo pulse
    double t_gate = 30e-9;
    double t_ramsey = 1e-6;

    /// chi/2pi = 2.9 MHz, kappa/2pi = 5.7 MHz, 400 ns probe.
    static ReadoutModel device_defaults();

    double chi_of(int state) const { return state == 0 ? -chi : chi; }
    /// Throws std::invalid_argument unless kappa > 0, n0 >= 0 and the
    /// durations are non-negative.
    void validate() const;
};

/// Field amplitude for qubit state 0 (ground) or 1 (excited), starting from
/// an empty resonator at t = 0. The drive is on for t <= t_pulse, after which
/// the field rings down from its value at t_pulse.
cplx resonator_alpha(double t, int state, const ReadoutModel& model);

/// Drive amplitude whose steady state at delta_r = 0 holds `nbar` photons.
double epsilon_for_nbar(double nbar, const ReadoutModel& model);

struct StarkDephasing {
    double omega = 0.0;  // AC Stark shift, rad/s
    double gamma = 0.0;  // measurement-induced dephasing, 1/s
};

/// Omega = (chi_g - chi_e) Re[conj(a_g) a_e], Gamma = (chi_g - chi_e) Im[conj(a_g) a_e].
StarkDephasing stark_and_dephasing(double t, const ReadoutModel& model);

}  // namespace dqc::readout
