#include "dqc/experiments/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "dqc/experiments/seeding.hpp"
#include "dqc/experiments/stats.hpp"
#include "dqc/experiments/worker_pool.hpp"
#include "dqc/qpe/phase.hpp"

namespace dqc::experiments {

namespace {

std::uint64_t tag(qpe::Protocol p) { return p == qpe::Protocol::Ipe ? kTagIpe : kTagKitaev; }

std::vector<qpe::Protocol> protocols_of(const ExperimentConfig& c) {
    std::vector<qpe::Protocol> out;
    if (c.runs(qpe::Protocol::Ipe)) out.push_back(qpe::Protocol::Ipe);
    if (c.runs(qpe::Protocol::Kitaev)) out.push_back(qpe::Protocol::Kitaev);
    return out;
}

std::vector<unsigned> bit_range(const ExperimentConfig& c) {
    std::vector<unsigned> out;
    for (unsigned m = c.m_min; m <= c.m_max; ++m) {
        out.push_back(m);
    }
    return out;
}

long shots_or_zero(long r, unsigned m, qpe::Protocol p) {
    return p == qpe::Protocol::Ipe ? r / static_cast<long>(m) : r / (2 * static_cast<long>(m));
}

std::vector<double> cdf_of(const std::vector<double>& dist) {
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        cdf[i] = acc;
    }
    return cdf;
}

}  // namespace

std::vector<RunRow> run_grid(const noise::DeviceParams& device, const std::vector<qpe::Protocol>& protocols,
                             const std::vector<unsigned>& bits, const std::vector<long>& resources,
                             const std::vector<double>& phases, qpe::IpeMethod method, qpe::Sampling sampling,
                             std::uint64_t seed, unsigned threads, std::uint64_t salt) {
    for (long r : resources) {
        if (r <= 0) {
            throw std::invalid_argument("resources must be positive");
        }
    }
    const std::size_t per_task = protocols.size() * resources.size();
    const std::size_t n_tasks = bits.size() * phases.size();
    std::vector<RunRow> rows(n_tasks * per_task);

    parallel_for(n_tasks, threads, [&](std::size_t task) {
        const unsigned m = bits[task / phases.size()];
        const std::size_t pi = task % phases.size();
        const double phase = phases[pi];
        std::vector<double> dist;
        std::vector<std::array<double, 2>> p0;
        std::size_t slot = task * per_task;
        for (qpe::Protocol proto : protocols) {
            const bool exact = sampling == qpe::Sampling::Exact;
            if (exact && proto == qpe::Protocol::Ipe && dist.empty()) {
                dist = qpe::ipe_distribution(phase, m, device);
            }
            if (exact && proto == qpe::Protocol::Kitaev && p0.empty()) {
                for (unsigned k = 1; k <= m; ++k) {
                    p0.push_back(qpe::kitaev_p0(phase, k, device));
                }
            }
            for (long r : resources) {
                RunRow row;
                row.protocol = proto;
                row.m = m;
                row.resources = r;
                row.phase_index = pi;
                row.phase = phase;
                row.shots = shots_or_zero(r, m, proto);
                row.seed = derive_seed(seed, {tag(proto), m, static_cast<std::uint64_t>(r), pi, salt});
                if (row.shots < 1) {
                    row.skipped = true;
                    row.estimate = std::numeric_limits<double>::quiet_NaN();
                    row.error = std::numeric_limits<double>::quiet_NaN();
                    rows[slot++] = row;
                    continue;
                }
                sim::Rng rng(row.seed);
                if (proto == qpe::Protocol::Ipe) {
                    const qpe::IpeRun run = exact
                                                ? qpe::run_ipe_from_distribution(phase, m, row.shots, method, dist, rng)
                                                : qpe::run_ipe(phase, m, row.shots, method, device, rng, sampling);
                    row.estimate = run.estimate.value;
                    row.error = run.error;
                } else {
                    const qpe::KitaevRun run = exact ? qpe::run_kitaev_from_p0(phase, row.shots, p0, rng)
                                                     : qpe::run_kitaev(phase, m, row.shots, device, rng, sampling);
                    row.estimate = run.estimate.phase.value;
                    row.error = run.error;
                }
                rows[slot++] = row;
            }
        }
    });

    std::stable_sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
        return std::tie(a.protocol, a.m, a.resources, a.phase_index) <
               std::tie(b.protocol, b.m, b.resources, b.phase_index);
    });
    return rows;
}

std::vector<CellSummary> summarize(const std::vector<RunRow>& rows) {
    std::map<std::tuple<qpe::Protocol, unsigned, long>, std::vector<const RunRow*>> cells;
    for (const auto& r : rows) {
        cells[{r.protocol, r.m, r.resources}].push_back(&r);
    }
    std::vector<CellSummary> out;
    for (const auto& [key, members] : cells) {
        CellSummary s;
        std::tie(s.protocol, s.m, s.resources) = key;
        s.lower_bound = std::ldexp(1.0, -static_cast<int>(s.m) - 1);
        s.shots = members.front()->shots;
        s.skipped = members.front()->skipped;
        std::vector<double> errs;
        for (const RunRow* r : members) {
            if (!r->skipped) errs.push_back(r->error);
        }
        s.n = errs.size();
        s.median_error = median(errs);
        s.mean_error = mean(errs);
        out.push_back(s);
    }
    return out;
}

std::vector<long> default_bits_resources(const ExperimentConfig& c) {
    return c.resources.empty() ? std::vector<long>{50, 70, 200} : c.resources;
}

std::vector<long> default_sweep_resources(const ExperimentConfig& c) {
    if (!c.resources.empty()) {
        return c.resources;
    }
    if (c.quick) {
        return {20, 50, 70, 100, 200, 500};
    }
    return {10, 20, 30, 50, 70, 100, 150, 200, 300, 500, 700, 1000};
}

SweepResult sweep_bits(const ExperimentConfig& c) {
    c.validate();
    SweepResult res;
    res.rows = run_grid(c.device, protocols_of(c), bit_range(c), default_bits_resources(c), phase_set(c), c.method,
                        c.sampling, c.seed, c.threads);
    res.summary = summarize(res.rows);
    return res;
}

ResourceSweep sweep_resources(const ExperimentConfig& c) {
    c.validate();
    ResourceSweep res;
    res.sweep.rows = run_grid(c.device, protocols_of(c), bit_range(c), default_sweep_resources(c), phase_set(c),
                              c.method, c.sampling, c.seed, c.threads);
    res.sweep.summary = summarize(res.sweep.rows);
    std::map<std::pair<qpe::Protocol, long>, OptimalBits> best;
    for (const auto& s : res.sweep.summary) {
        if (s.skipped || s.n == 0) {
            continue;
        }
        auto [it, fresh] = best.try_emplace({s.protocol, s.resources});
        // Strictly lower wins; ties keep the smaller m.
        if (fresh || s.median_error < it->second.median_error) {
            it->second = {s.protocol, s.resources, s.m, s.median_error, s.mean_error};
        }
    }
    for (auto& [key, v] : best) {
        res.optimal.push_back(v);
    }
    return res;
}

std::vector<MapCell> error_map(const ExperimentConfig& c) {
    c.validate();
    const auto& e = c.error_map;
    const std::vector<double> phases = phase_set(c);
    std::vector<MapCell> cells;
    for (long r : e.resources) {
        for (double t : e.t_grid) {
            for (double lat : e.latency_grid) {
                MapCell cell;
                cell.t = t;
                cell.latency = lat;
                cell.resources = r;
                cell.m = e.bits;
                cells.push_back(cell);
            }
        }
    }
    // One task per (T, latency, phase); both R values reuse the distribution.
    const std::size_t n_env = e.t_grid.size() * e.latency_grid.size();
    const std::size_t n_tasks = n_env * phases.size();
    std::vector<std::vector<std::array<double, 2>>> errs(n_tasks);
    parallel_for(n_tasks, c.threads, [&](std::size_t task) {
        const std::size_t env = task / phases.size();
        const std::size_t pi = task % phases.size();
        const double t = e.t_grid[env / e.latency_grid.size()];
        const double lat = e.latency_grid[env % e.latency_grid.size()];
        noise::DeviceParams dev = c.device;
        dev.t1 = {t};
        dev.t2 = {t};
        dev.meas_reset_latency = lat;
        dev.p_assign_1given0 = e.p_assign;
        dev.p_assign_0given1 = e.p_assign;
        dev.p_reset_excited = e.p_reset;
        const std::vector<RunRow> rows =
            run_grid(dev, {qpe::Protocol::Ipe, qpe::Protocol::Kitaev}, {e.bits}, e.resources, {phases[pi]}, c.method,
                     c.sampling, c.seed, 1, pi);
        auto& out = errs[task];
        out.assign(e.resources.size(), {std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN()});
        for (const auto& row : rows) {
            const std::size_t ri = static_cast<std::size_t>(
                std::find(e.resources.begin(), e.resources.end(), row.resources) - e.resources.begin());
            out[ri][row.protocol == qpe::Protocol::Ipe ? 0 : 1] = row.error;
        }
    });
    std::size_t ci = 0;
    for (std::size_t ri = 0; ri < e.resources.size(); ++ri) {
        for (std::size_t env = 0; env < n_env; ++env, ++ci) {
            MapCell& cell = cells[ci];
            for (std::size_t pi = 0; pi < phases.size(); ++pi) {
                const auto& v = errs[env * phases.size() + pi][ri];
                if (!std::isnan(v[0])) cell.ipe_errors.push_back(v[0]);
                if (!std::isnan(v[1])) cell.kitaev_errors.push_back(v[1]);
            }
            cell.ipe_median = median(cell.ipe_errors);
            cell.kitaev_median = median(cell.kitaev_errors);
            cell.ipe_mean = mean(cell.ipe_errors);
            cell.kitaev_mean = mean(cell.kitaev_errors);
        }
    }
    return cells;
}

std::vector<ShootoutPoint> estimator_shootout(const ExperimentConfig& c) {
    c.validate();
    const unsigned m = c.shootout.bits;
    const auto& grid = c.shootout.resources;
    const std::vector<double> phases = phase_set(c);
    const noise::DeviceParams dev = noise::DeviceParams::noiseless();
    constexpr std::size_t kMethods = std::size(qpe::kAllIpeMethods);

    // errs[phase][R][method], method index kMethods is Kitaev.
    std::vector<std::vector<std::array<double, kMethods + 1>>> errs(phases.size());
    parallel_for(phases.size(), c.threads, [&](std::size_t pi) {
        const double phase = phases[pi];
        const std::vector<double> cdf = cdf_of(qpe::ipe_distribution(phase, m, dev));
        std::vector<std::array<double, 2>> p0;
        for (unsigned k = 1; k <= m; ++k) {
            p0.push_back(qpe::kitaev_p0(phase, k, dev));
        }
        auto& out = errs[pi];
        out.resize(grid.size());
        for (std::size_t ri = 0; ri < grid.size(); ++ri) {
            const long r = grid[ri];
            out[ri].fill(std::numeric_limits<double>::quiet_NaN());
            const long s_ipe = r / static_cast<long>(m);
            if (s_ipe >= 1) {
                sim::Rng rng(derive_seed(c.seed, {kTagIpe, m, static_cast<std::uint64_t>(r), pi, 0xE5}));
                std::vector<std::uint32_t> codes(static_cast<std::size_t>(s_ipe));
                for (auto& code : codes) {
                    code = qpe::sample_code(cdf, rng);
                }
                const auto counts = qpe::count_codes(codes, m);
                for (std::size_t k = 0; k < kMethods; ++k) {
                    const auto est = qpe::ipe_estimate_counts(counts, m, qpe::kAllIpeMethods[k]);
                    out[ri][k] = qpe::circular_error(est.value, phase);
                }
            }
            const long s_kit = r / (2 * static_cast<long>(m));
            if (s_kit >= 1) {
                sim::Rng rng(derive_seed(c.seed, {kTagKitaev, m, static_cast<std::uint64_t>(r), pi, 0xE5}));
                out[ri][kMethods] = qpe::run_kitaev_from_p0(phase, s_kit, p0, rng).error;
            }
        }
    });

    std::vector<ShootoutPoint> points;
    for (std::size_t k = 0; k <= kMethods; ++k) {
        for (std::size_t ri = 0; ri < grid.size(); ++ri) {
            ShootoutPoint p;
            p.method = k < kMethods ? qpe::to_string(qpe::kAllIpeMethods[k]) : "kitaev";
            p.resources = grid[ri];
            p.shots = k < kMethods ? grid[ri] / static_cast<long>(m) : grid[ri] / (2 * static_cast<long>(m));
            for (std::size_t pi = 0; pi < phases.size(); ++pi) {
                const double v = errs[pi][ri][k];
                if (!std::isnan(v)) p.errors.push_back(v);
            }
            p.skipped = p.errors.empty();
            p.mean_error = mean(p.errors);
            p.median_error = median(p.errors);
            p.mean_stderr = mean_se(p.errors);
            points.push_back(std::move(p));
        }
    }
    return points;
}

}  // namespace dqc::experiments
