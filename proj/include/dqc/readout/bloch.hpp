#pragma once

#include <vector>

#include "dqc/readout/resonator.hpp"

namespace dqc::readout {

struct BlochTrace {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
};

/// Transverse Bloch components in the frame rotating at the Lamb-shifted
/// qubit frequency:
///   dX/dt = -Omega(t) Y - [gamma2 + Gamma(t)] X
///   dY/dt =  Omega(t) X - [gamma2 + Gamma(t)] Y
/// Fixed-step fourth-order scheme. The equations are linear in z = X + iY,
/// so each step multiplies z by exp of the RK4 (Simpson) integral of
/// i Omega - gamma2 - Gamma over the step; |z| is conserved exactly when
/// the damping vanishes.
///
/// Throws std::invalid_argument when dt > 1/(10 max(kappa, |Omega|max)),
/// with |Omega|max taken over the integration grid (or 256 points of
/// [0, t_end] when the grid is coarser).
BlochTrace bloch_integrate(double x0, double y0, const ReadoutModel& model, double t_end, double dt);

/// Final X + iY of the same integration without storing the series.
cplx bloch_endpoint(double x0, double y0, const ReadoutModel& model, double t_end, double dt);

/// Largest step bloch_integrate accepts for this model and horizon.
double bloch_max_step(const ReadoutModel& model, double t_end);

}  // namespace dqc::readout
