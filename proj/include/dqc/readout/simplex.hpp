#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dqc::readout {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
    int max_iterations = 4000;
    double size_tol = 1e-9;  // characteristic simplex size at convergence
    double initial_step = 0.1;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead (GSL nmsimplex2) from one start point.
SimplexResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options = {});

/// Runs every start, restarts the best one until it stops improving, and
/// returns it. `converged` reflects the final restart.
SimplexResult minimize_multistart(const Objective& f, const std::vector<std::vector<double>>& starts,
                                  const SimplexOptions& options = {});

}  // namespace dqc::readout
