#include "dqc/readout/matched_filter.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dqc/simd/kernels.hpp"

namespace dqc::readout {

void IQTraceSet::validate(std::size_t min_count) const {
    if (traces.size() < min_count) {
        throw std::invalid_argument("IQTraceSet: need at least " + std::to_string(min_count) + " traces");
    }
    for (const auto& t : traces) {
        if (t.size() != traces.front().size()) {
            throw std::invalid_argument("IQTraceSet: traces differ in length");
        }
    }
    if (!(sample_period > 0.0)) {
        throw std::invalid_argument("IQTraceSet: sample period must be positive");
    }
}

namespace {

std::size_t sample_count(const SynthOptions& o) {
    if (!(o.sample_period > 0.0) || !(o.duration > 0.0)) {
        throw std::invalid_argument("SynthOptions: duration and sample period must be positive");
    }
    return static_cast<std::size_t>(std::llround(o.duration / o.sample_period));
}

Trace mean_response(const ReadoutModel& model, int label, const SynthOptions& o) {
    Trace out(sample_count(o));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = resonator_alpha(static_cast<double>(i) * o.sample_period, label, model);
    }
    return out;
}

}  // namespace

IQTraceSet synthesize_traces(const ReadoutModel& model, int label, const SynthOptions& options, sim::Rng& rng) {
    model.validate();
    const Trace g = mean_response(model, 0, options);
    const Trace e = mean_response(model, 1, options);
    const cplx pole_g(model.kappa / 2.0, model.delta_r + model.chi_of(0));
    std::normal_distribution<double> noise(0.0, options.noise_sigma);
    std::exponential_distribution<double> decay(std::isfinite(options.t1) ? 1.0 / options.t1 : 1.0);

    IQTraceSet set;
    set.sample_period = options.sample_period;
    set.label = label;
    set.traces.reserve(options.n_traces);
    for (std::size_t n = 0; n < options.n_traces; ++n) {
        Trace tr = label == 0 ? g : e;
        if (label == 1 && std::isfinite(options.t1)) {
            const double td = decay(rng.engine());
            if (td < options.duration) {
                const cplx jump = resonator_alpha(td, 1, model) - resonator_alpha(td, 0, model);
                for (std::size_t i = 0; i < tr.size(); ++i) {
                    const double t = static_cast<double>(i) * options.sample_period;
                    if (t > td) {
                        tr[i] = g[i] + jump * std::exp(-(t - td) * pole_g);
                    }
                }
            }
        }
        for (auto& v : tr) {
            v += cplx(noise(rng.engine()), noise(rng.engine()));
        }
        set.traces.push_back(std::move(tr));
    }
    return set;
}

double sigma_for_fisher(const ReadoutModel& model, const SynthOptions& options, double fisher,
                        std::size_t window_begin, std::size_t window_end) {
    if (!(fisher > 0.0)) {
        throw std::invalid_argument("sigma_for_fisher: separation must be positive");
    }
    const Trace g = mean_response(model, 0, options);
    const Trace e = mean_response(model, 1, options);
    if (window_end == 0 || window_end > g.size()) {
        window_end = g.size();
    }
    double k2 = 0.0;
    for (std::size_t i = window_begin; i < window_end; ++i) {
        k2 += std::norm(g[i] - e[i]);
    }
    // Score gap is |k|^2 and each score has variance sigma^2 |k|^2, so
    // F = |k|^2 / (2 sigma^2).
    return std::sqrt(k2 / (2.0 * fisher));
}

double MatchedFilter::fisher_separation() const {
    const double d = mean0 - mean1;
    return d * d / (sigma0 * sigma0 + sigma1 * sigma1);
}

double filter_score(std::span<const cplx> trace, std::span<const cplx> kernel) {
    if (trace.size() != kernel.size()) {
        throw std::invalid_argument("filter_score: trace and kernel lengths differ");
    }
    return simd::dot_re(trace, kernel);
}

int discriminate(std::span<const cplx> trace, std::span<const cplx> kernel, double threshold) {
    return filter_score(trace, kernel) > threshold ? 0 : 1;
}

namespace {

void score_stats(const IQTraceSet& set, const Trace& kernel, double& mean, double& sigma) {
    double s = 0.0, s2 = 0.0;
    for (const auto& t : set.traces) {
        const double v = filter_score(t, kernel);
        s += v;
        s2 += v * v;
    }
    const double n = static_cast<double>(set.traces.size());
    mean = s / n;
    sigma = std::sqrt(std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)));
}

}  // namespace

MatchedFilter matched_filter(const IQTraceSet& zeros, const IQTraceSet& ones, std::size_t begin, std::size_t end) {
    zeros.validate(100);
    ones.validate(100);
    const std::size_t len = zeros.traces.front().size();
    if (ones.traces.front().size() != len) {
        throw std::invalid_argument("matched_filter: label sets differ in trace length");
    }
    if (end == 0) {
        end = len;
    }
    if (begin >= end || end > len) {
        throw std::invalid_argument("matched_filter: bad kernel window");
    }
    MatchedFilter f;
    f.kernel.assign(len, cplx{});
    Trace sum0(len), sum1(len);
    for (const auto& t : zeros.traces) {
        simd::accumulate(sum0, t);
    }
    for (const auto& t : ones.traces) {
        simd::accumulate(sum1, t);
    }
    const double n0 = static_cast<double>(zeros.traces.size());
    const double n1 = static_cast<double>(ones.traces.size());
    double norm = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        f.kernel[i] = sum0[i] / n0 - sum1[i] / n1;
        norm += std::norm(f.kernel[i]);
    }
    if (norm == 0.0) {
        throw std::invalid_argument("matched_filter: label means are identical");
    }
    score_stats(zeros, f.kernel, f.mean0, f.sigma0);
    score_stats(ones, f.kernel, f.mean1, f.sigma1);
    f.threshold = 0.5 * (f.mean0 + f.mean1);
    return f;
}

double assignment_error(const IQTraceSet& zeros, const IQTraceSet& ones, const MatchedFilter& filter) {
    std::size_t wrong0 = 0, wrong1 = 0;
    for (const auto& t : zeros.traces) {
        wrong0 += discriminate(t, filter.kernel, filter.threshold) != 0;
    }
    for (const auto& t : ones.traces) {
        wrong1 += discriminate(t, filter.kernel, filter.threshold) != 1;
    }
    return 0.5 * (static_cast<double>(wrong0) / zeros.traces.size() + static_cast<double>(wrong1) / ones.traces.size());
}

}  // namespace dqc::readout
