#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dqc/noise/device_params.hpp"
#include "dqc/qpe/estimators.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::qpe {

/// How measurement records are produced. Exact evolves the density matrix
/// once and samples the resulting outcome distribution; ShotByShot runs the
/// dynamic circuit per shot. Both follow the same noise model.
enum class Sampling { Exact, ShotByShot };

/// One dynamic-circuit execution, rounds k = m..1 with feedback from the
/// reported bits. Returns the code phi_1..phi_m (phi_1 the top bit).
std::uint32_t run_ipe_shot(double phase, unsigned m, const noise::DeviceParams& device, sim::Rng& rng);

/// Exact probability of every reported code, by branching the density matrix
/// on each round's reported bit.
std::vector<double> ipe_distribution(double phase, unsigned m, const noise::DeviceParams& device);

/// Reported P(0) of the cos and sin circuits for bit k.
std::array<double, 2> kitaev_p0(double phase, unsigned k, const noise::DeviceParams& device);

struct IpeRun {
    std::vector<std::uint32_t> codes;
    PhaseFraction estimate;
    double error = 0.0;
};

IpeRun run_ipe(double phase, unsigned m, long shots, IpeMethod method, const noise::DeviceParams& device,
               sim::Rng& rng, Sampling sampling = Sampling::Exact);

/// Same as run_ipe with a precomputed ipe_distribution.
IpeRun run_ipe_from_distribution(double phase, unsigned m, long shots, IpeMethod method,
                                 const std::vector<double>& distribution, sim::Rng& rng);

struct KitaevRun {
    std::vector<std::array<long, 2>> zeros;  // per k: P(0) counts for cos, sin
    std::vector<double> alphas;
    KitaevEstimate estimate;
    double error = 0.0;
};

/// `shots` per circuit; 2m circuits.
KitaevRun run_kitaev(double phase, unsigned m, long shots, const noise::DeviceParams& device, sim::Rng& rng,
                     Sampling sampling = Sampling::Exact);

/// Same as run_kitaev with precomputed kitaev_p0 for k = 1..m.
KitaevRun run_kitaev_from_p0(double phase, long shots, const std::vector<std::array<double, 2>>& p0,
                             sim::Rng& rng);

/// Draws a code from a probability vector with one uniform draw.
std::uint32_t sample_code(const std::vector<double>& cdf, sim::Rng& rng);

}  // namespace dqc::qpe
