#pragma once

#include <limits>
#include <span>
#include <vector>

#include "dqc/readout/resonator.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::readout {

using Trace = std::vector<cplx>;

struct IQTraceSet {
    double sample_period = 2e-9;
    std::vector<Trace> traces;
    int label = 0;  // prepared state

    /// Throws std::invalid_argument on ragged traces or fewer than `min_count`.
    void validate(std::size_t min_count = 2) const;
};

struct SynthOptions {
    std::size_t n_traces = 1000;
    double duration = 360e-9;
    double sample_period = 2e-9;
    double noise_sigma = 1.0;  // per quadrature per sample
    /// Excited traces may decay to the ground response at an exponentially
    /// distributed time with this T1; +inf disables it.
    double t1 = std::numeric_limits<double>::infinity();
};

/// Mean response resonator_alpha(t, label) plus white complex Gaussian
/// noise. On decay at t_d the field relaxes toward the ground response:
///   a(t) = a_g(t) + (a_e(t_d) - a_g(t_d)) exp(-(t - t_d)(kappa/2 + i(delta_r + chi_g)))
IQTraceSet synthesize_traces(const ReadoutModel& model, int label, const SynthOptions& options, sim::Rng& rng);

/// Noise sigma that gives Fisher separation `fisher` between the two noise-free
/// mean traces over [window_begin, window_end) samples.
double sigma_for_fisher(const ReadoutModel& model, const SynthOptions& options, double fisher,
                        std::size_t window_begin, std::size_t window_end);

struct MatchedFilter {
    Trace kernel;  // mean0 - mean1 inside the window, zero outside
    double threshold = 0.0;
    double mean0 = 0.0;  // mean projected score, label 0
    double mean1 = 0.0;
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    /// (mean0 - mean1)^2 / (sigma0^2 + sigma1^2)
    double fisher_separation() const;
};

/// Kernel from the difference of mean traces over samples [begin, end).
/// end = 0 means the full length. Requires >= 100 traces per label; throws
/// std::invalid_argument when the means coincide.
MatchedFilter matched_filter(const IQTraceSet& zeros, const IQTraceSet& ones, std::size_t begin = 0,
                             std::size_t end = 0);

/// Re<trace, kernel> = sum Re(trace_i conj(kernel_i)).
double filter_score(std::span<const cplx> trace, std::span<const cplx> kernel);

/// 0 when the score is above threshold.
int discriminate(std::span<const cplx> trace, std::span<const cplx> kernel, double threshold);

/// Mean of P(1|0) and P(0|1) on labelled sets.
double assignment_error(const IQTraceSet& zeros, const IQTraceSet& ones, const MatchedFilter& filter);

}  // namespace dqc::readout
