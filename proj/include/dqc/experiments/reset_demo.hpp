#pragma once

#include <vector>

#include "dqc/experiments/config.hpp"

namespace dqc::experiments {

struct ResetCycle {
    int cycle = 0;             // resets applied so far
    double p1_exact = 0.0;     // excited population after this cycle
    double p1_sampled = 0.0;   // projected bit of the next measurement, averaged
    double p1_stderr = 0.0;    // binomial
    double p1_reported = 0.0;  // exact rate the next measurement reports as 1
    double hellinger_sq = 0.0;  // against the ideal (1, 0), from p1_exact
    double fidelity = 0.0;      // (1 - H^2)^2
};

struct ResetDemoResult {
    double p_reset = 0.0;  // excitation per reset, calibrated or given
    long shots = 0;
    std::vector<ResetCycle> cycles;
};

/// Pointer alone: H, then `cycles` rounds of noisy measure + conditional
/// reset at the configured cycle time, then a final measurement. The reset
/// error after cycle c is the excited population left behind; the sampled
/// estimate is the projected (not reported) bit of measurement c + 1.
ResetDemoResult reset_demo(const ExperimentConfig& c);

/// Exact excited population after each cycle for a given excitation rate.
std::vector<double> reset_demo_exact(const ResetDemoConfig& r, double p_reset);
/// Same, folded through the assignment errors of a following measurement.
std::vector<double> reset_demo_reported(const ResetDemoConfig& r, double p_reset);

/// Excitation rate giving `r.first_cycle_target` after one cycle, by
/// bisection on [0, 0.5]. Returns 0 when the target is already exceeded.
double calibrate_reset_error(const ResetDemoConfig& r);

}  // namespace dqc::experiments
