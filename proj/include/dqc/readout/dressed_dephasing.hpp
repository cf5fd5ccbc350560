#pragma once

#include <span>
#include <vector>

#include "dqc/readout/resonator.hpp"
#include "dqc/readout/simplex.hpp"

namespace dqc::readout {

/// Ramsey-style probe: qubit on the equator (X = 1), resonator driven for
/// `drive`, then left to ring down for `delay`.
struct DressedProtocol {
    double drive = 400e-9;
    double delay = 500e-9;
    int steps = 450;  // integration steps over drive + delay
};

struct DephasingPoint {
    double one_plus_x = 0.0;
    double one_minus_y = 0.0;
};

/// Final (1 + X, 1 - Y) for each drive detuning (rad/s). The model's
/// t_pulse and delta_r are overridden by the protocol and the sweep.
std::vector<DephasingPoint> dressed_dephasing_signal(std::span<const double> delta_r, const ReadoutModel& model,
                                                     const DressedProtocol& protocol = {});

/// One measured sweep at a fixed drive amplitude.
struct DephasingCurve {
    std::vector<double> delta_r;
    std::vector<DephasingPoint> points;
};

struct DressedFitOptions {
    double chi_guess = 0.0;    // rad/s
    double kappa_guess = 0.0;  // rad/s
    std::vector<double> nbar_guess;  // one per curve
    double spread = 1.6;  // starts at guess * spread^{+-1} per log axis
    SimplexOptions simplex{};
};

struct DressedFit {
    double chi = 0.0;
    double kappa = 0.0;
    std::vector<double> nbar;  // steady-state photons at delta_r = 0 per curve
    double residual = 0.0;     // sum of squared residuals
    int iterations = 0;
    bool converged = false;
};

/// Least squares over (chi, kappa, nbar_1..nbar_A) in log space with eight
/// starts. `base` supplies gamma2; its chi, kappa and epsilon are ignored.
DressedFit fit_dressed_dephasing(std::span<const DephasingCurve> curves, const ReadoutModel& base,
                                 const DressedFitOptions& options, const DressedProtocol& protocol = {});

/// nbar = slope * amplitude^2 + intercept from calibration points.
struct PowerLine {
    double slope = 0.0;
    double intercept = 0.0;
    double nbar_at(double amplitude) const { return slope * amplitude * amplitude + intercept; }
};

PowerLine fit_nbar_vs_power(std::span<const double> amplitudes, std::span<const double> nbars);

}  // namespace dqc::readout
