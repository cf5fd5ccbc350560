#include "dqc/qpe/protocols.hpp"

#include <algorithm>
#include <stdexcept>

#include "dqc/noise/measurement.hpp"
#include "dqc/qpe/circuits.hpp"

namespace dqc::qpe {

namespace {

void check_m(unsigned m) {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("number of bits must be in [1, 20]");
    }
}

sim::RunOptions quiet() {
    sim::RunOptions o;
    o.check_invariants = false;
    return o;
}

// Later bits phi_{k+1}..phi_m of a partially assembled code.
std::vector<int> later_bits(std::uint32_t code, unsigned m, unsigned k) {
    std::vector<int> out;
    for (unsigned j = k + 1; j <= m; ++j) {
        out.push_back(static_cast<int>((code >> (m - j)) & 1U));
    }
    return out;
}

void scale(sim::DensityMatrix& s, double w) {
    for (auto& v : s.mutable_data()) {
        v *= w;
    }
}

void add_into(sim::DensityMatrix& acc, const sim::DensityMatrix& x) {
    auto a = acc.mutable_data();
    auto b = x.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
    }
}

// Pi_a rho Pi_a without renormalising; `weight` is its trace.
sim::DensityMatrix unnormalised_projection(const sim::DensityMatrix& s, unsigned q, int a, double& weight) {
    sim::DensityMatrix out = s;
    weight = out.population(q, a);
    if (weight < 1e-15) {
        weight = 0.0;
        return out;
    }
    sim::project(out, q, a);
    scale(out, weight);
    return out;
}

void ipe_branch(const sim::DensityMatrix& state, double phase, unsigned m, unsigned k, std::uint32_t code,
                const noise::DeviceParams& device, std::vector<double>& out) {
    const double mass = state.trace();
    if (mass <= 1e-300) {
        return;
    }
    sim::DensityMatrix s = state;
    sim::ClassicalRegister reg(1);
    sim::Rng unused(0);
    sim::run_circuit(build_ipe_round(phase, k, ipe_theta(later_bits(code, m, k)), device), s, reg, device, unused,
                     quiet());
    const double rate[2][2] = {{1.0 - device.p_assign_1given0, device.p_assign_1given0},
                               {device.p_assign_0given1, 1.0 - device.p_assign_0given1}};
    double w[2];
    sim::DensityMatrix proj[2] = {unnormalised_projection(s, kPointer, 0, w[0]),
                                  unnormalised_projection(s, kPointer, 1, w[1])};
    for (int r = 0; r < 2; ++r) {
        const std::uint32_t next = code | (static_cast<std::uint32_t>(r) << (m - k));
        if (k == 1) {
            out[next] += w[0] * rate[0][r] + w[1] * rate[1][r];
            continue;
        }
        sim::DensityMatrix merged(s.n_qubits());
        scale(merged, 0.0);
        for (int a = 0; a < 2; ++a) {
            if (w[a] == 0.0 || rate[a][r] == 0.0) {
                continue;
            }
            sim::DensityMatrix branch = proj[a];
            scale(branch, rate[a][r]);
            noise::conditional_reset(branch, kPointer, r, device);
            add_into(merged, branch);
        }
        ipe_branch(merged, phase, m, k - 1, next, device, out);
    }
}

}  // namespace

std::uint32_t run_ipe_shot(double phase, unsigned m, const noise::DeviceParams& device, sim::Rng& rng) {
    check_m(m);
    sim::DensityMatrix state(2);
    sim::ClassicalRegister reg(m);
    sim::run_circuit(prepare_eigenstate(device), state, reg, device, rng, quiet());
    std::uint32_t code = 0;
    for (unsigned k = m; k >= 1; --k) {
        Program round = build_ipe_round(phase, k, ipe_theta(later_bits(code, m, k)), device);
        round.push_back(sim::measure_to(kPointer, k - 1));
        if (k > 1) {
            round.push_back(sim::reset(kPointer, k - 1));
        }
        sim::run_circuit(round, state, reg, device, rng, quiet());
        code |= static_cast<std::uint32_t>(reg.get(k - 1)) << (m - k);
    }
    return code;
}

std::vector<double> ipe_distribution(double phase, unsigned m, const noise::DeviceParams& device) {
    check_m(m);
    sim::DensityMatrix state(2);
    sim::ClassicalRegister reg(1);
    sim::Rng unused(0);
    sim::run_circuit(prepare_eigenstate(device), state, reg, device, unused, quiet());
    std::vector<double> out(std::size_t{1} << m, 0.0);
    ipe_branch(state, phase, m, m, 0, device, out);
    return out;
}

std::array<double, 2> kitaev_p0(double phase, unsigned k, const noise::DeviceParams& device) {
    const KitaevPair pair = build_kitaev_pair(phase, k, device);
    std::array<double, 2> out{};
    int idx = 0;
    for (const Program* p : {&pair.cos_circuit, &pair.sin_circuit}) {
        sim::DensityMatrix state(2);
        sim::ClassicalRegister reg(1);
        sim::Rng unused(0);
        // Drop the trailing measurement and fold assignment error in by hand.
        const Program body(p->begin(), p->end() - 1);
        sim::run_circuit(body, state, reg, device, unused, quiet());
        const double p0 = std::clamp(state.population(kPointer, 0), 0.0, 1.0);
        out[idx++] = p0 * (1.0 - device.p_assign_1given0) + (1.0 - p0) * device.p_assign_0given1;
    }
    return out;
}

std::uint32_t sample_code(const std::vector<double>& cdf, sim::Rng& rng) {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    return static_cast<std::uint32_t>(std::min(idx, cdf.size() - 1));
}

IpeRun run_ipe_from_distribution(double phase, unsigned m, long shots, IpeMethod method,
                                 const std::vector<double>& distribution, sim::Rng& rng) {
    if (shots < 1) {
        throw std::invalid_argument("run_ipe: need at least one shot");
    }
    std::vector<double> cdf(distribution.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += std::max(0.0, distribution[i]);
        cdf[i] = acc;
    }
    IpeRun run;
    run.codes.reserve(static_cast<std::size_t>(shots));
    for (long s = 0; s < shots; ++s) {
        run.codes.push_back(sample_code(cdf, rng));
    }
    run.estimate = ipe_estimate(run.codes, m, method);
    run.error = circular_error(run.estimate.value, wrap01(phase));
    return run;
}

IpeRun run_ipe(double phase, unsigned m, long shots, IpeMethod method, const noise::DeviceParams& device,
               sim::Rng& rng, Sampling sampling) {
    if (sampling == Sampling::Exact) {
        return run_ipe_from_distribution(phase, m, shots, method, ipe_distribution(phase, m, device), rng);
    }
    if (shots < 1) {
        throw std::invalid_argument("run_ipe: need at least one shot");
    }
    IpeRun run;
    for (long s = 0; s < shots; ++s) {
        run.codes.push_back(run_ipe_shot(phase, m, device, rng));
    }
    run.estimate = ipe_estimate(run.codes, m, method);
    run.error = circular_error(run.estimate.value, wrap01(phase));
    return run;
}

KitaevRun run_kitaev_from_p0(double phase, long shots, const std::vector<std::array<double, 2>>& p0,
                             sim::Rng& rng) {
    if (shots < 1) {
        throw std::invalid_argument("run_kitaev: need at least one shot per circuit");
    }
    KitaevRun run;
    for (const auto& probs : p0) {
        std::array<long, 2> zeros{0, 0};
        for (int c = 0; c < 2; ++c) {
            for (long s = 0; s < shots; ++s) {
                zeros[c] += rng.uniform() < probs[c] ? 1 : 0;
            }
        }
        run.zeros.push_back(zeros);
        run.alphas.push_back(kitaev_alpha(static_cast<double>(zeros[0]) / shots, static_cast<double>(zeros[1]) / shots));
    }
    run.estimate = kitaev_estimate(run.alphas);
    run.error = circular_error(run.estimate.phase.value, wrap01(phase));
    return run;
}

KitaevRun run_kitaev(double phase, unsigned m, long shots, const noise::DeviceParams& device, sim::Rng& rng,
                     Sampling sampling) {
    check_m(m);
    if (sampling == Sampling::Exact) {
        std::vector<std::array<double, 2>> p0;
        for (unsigned k = 1; k <= m; ++k) {
            p0.push_back(kitaev_p0(phase, k, device));
        }
        return run_kitaev_from_p0(phase, shots, p0, rng);
    }
    if (shots < 1) {
        throw std::invalid_argument("run_kitaev: need at least one shot per circuit");
    }
    KitaevRun run;
    for (unsigned k = 1; k <= m; ++k) {
        const KitaevPair pair = build_kitaev_pair(phase, k, device);
        std::array<long, 2> zeros{0, 0};
        int c = 0;
        for (const Program* p : {&pair.cos_circuit, &pair.sin_circuit}) {
            for (long s = 0; s < shots; ++s) {
                sim::DensityMatrix state(2);
                sim::ClassicalRegister reg(1);
                sim::run_circuit(*p, state, reg, device, rng, quiet());
                zeros[c] += reg.get(0) == 0 ? 1 : 0;
            }
            ++c;
        }
        run.zeros.push_back(zeros);
        run.alphas.push_back(kitaev_alpha(static_cast<double>(zeros[0]) / shots, static_cast<double>(zeros[1]) / shots));
    }
    run.estimate = kitaev_estimate(run.alphas);
    run.error = circular_error(run.estimate.phase.value, wrap01(phase));
    return run;
}

}  // namespace dqc::qpe
