#pragma once

#include <span>
#include <string>
#include <vector>

#include "dqc/readout/resonator.hpp"

namespace dqc::readout {

/// Echo contrast after a delay t from the end of the measurement tone:
///   S = [1 - a_c exp(-beta n(t)) cos(n(t) kappa 2 chi / (kappa^2 + 4 chi^2))] / 2
/// with n(t) = n0 e^{-kappa t} and beta = 4 chi^2 / (kappa^2 + 4 chi^2).
/// The cosine argument equals beta n kappa / (2 chi) but stays finite at
/// chi = 0.
double echo_signal(double t, double alpha_c, double n0, double chi, double kappa);

/// Uses a_c = exp(-gamma2 t_ramsey) and the model's n0, chi, kappa.
double echo_signal(double t, const ReadoutModel& model);

/// True when kappa * t_ramsey >= 5, where the closed form is trusted.
bool echo_regime_ok(const ReadoutModel& model);

struct EchoFit {
    double alpha_c = 0.0;
    double n0 = 0.0;
    double n0_corrected = 0.0;   // n0 * e^{kappa t_gate}
    double correction = 1.0;     // e^{kappa t_gate}
    double distinguishability = 0.0;  // 4 beta n0
    double alpha_c_stderr = 0.0;
    double n0_stderr = 0.0;
    double residual = 0.0;  // sum of squared residuals
    bool converged = false;
    std::vector<std::string> warnings;
};

/// Two-parameter (a_c, n0) least squares with chi and kappa held at the
/// model's values; t_gate sets the finite-gate correction.
EchoFit fit_photon_number(std::span<const double> t, std::span<const double> signal, const ReadoutModel& model,
                          double alpha_c_guess = 0.9, double n0_guess = 1.0);

/// Critical photon number |alpha Delta / (4 chi (Delta + alpha))|, all in
/// rad/s. Throws std::invalid_argument when chi = 0 or Delta + alpha = 0.
double n_crit(double anharmonicity, double detuning, double chi);

/// Squared Hellinger distance 1/2 sum (sqrt p - sqrt q)^2.
double hellinger_sq(std::span<const double> p, std::span<const double> q);

}  // namespace dqc::readout
