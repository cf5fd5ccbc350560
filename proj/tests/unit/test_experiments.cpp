#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "dqc/experiments/config.hpp"
#include "dqc/experiments/output.hpp"
#include "dqc/experiments/reset_demo.hpp"
#include "dqc/experiments/seeding.hpp"
#include "dqc/experiments/stats.hpp"
#include "dqc/experiments/sweeps.hpp"
#include "dqc/experiments/worker_pool.hpp"

using namespace dqc;
using namespace dqc::experiments;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("dqc_exp_" + name);
    std::filesystem::remove_all(d);
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> header_of(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    return cols;
}

std::size_t data_rows(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) n += !line.empty();
    return n - 1;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.phase_count = 12;
    c.m_min = 1;
    c.m_max = 4;
    c.resources = {20, 40};
    c.seed = 99;
    c.threads = 2;
    return c;
}

}  // namespace

TEST(Seeding, SplitMixReference) {
    // First output of splitmix64 seeded with 0.
    EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
    const std::uint64_t manual = mix64(mix64(mix64(5 ^ 0x6471635F73656564ULL) ^ 1) ^ 7);
    EXPECT_EQ(derive_seed(5, {1, 7}), manual);
    EXPECT_NE(derive_seed(5, {1, 7}), derive_seed(5, {7, 1}));
    EXPECT_NE(derive_seed(5, {kTagIpe, 3, 50, 0}), derive_seed(5, {kTagKitaev, 3, 50, 0}));
}

TEST(WorkerPool, EverySlotOnceAnyThreadCount) {
    for (unsigned threads : {0u, 1u, 3u, 16u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) ASSERT_EQ(h.load(), 1);
    }
    parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(WorkerPool, LowestFailingIndexWins) {
    try {
        parallel_for(100, 8, [](std::size_t i) {
            if (i == 17 || i == 80) throw std::runtime_error(std::to_string(i));
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "17");
    }
}

TEST(Stats, MedianMeanAndBootstrap) {
    const double odd[] = {3, 1, 2};
    const double even[] = {4, 1, 3, 2};
    EXPECT_EQ(median(odd), 2.0);
    EXPECT_EQ(median(even), 2.5);
    EXPECT_TRUE(std::isnan(median(std::span<const double>{})));
    EXPECT_EQ(mean(even), 2.5);
    std::vector<double> x(400);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i % 20);
    const double se = mean_se(x);
    // Values 0..19 repeated: population variance 33.25.
    EXPECT_NEAR(se, std::sqrt(33.25 * 400.0 / 399.0 / 400.0), 1e-12);
    const double boot = bootstrap_se(
        x.size(),
        [&](std::span<const std::size_t> idx) {
            double s = 0;
            for (auto i : idx) s += x[i];
            return s / double(idx.size());
        },
        2000, 3);
    EXPECT_NEAR(boot, se, 0.03);
    EXPECT_EQ(median_se(x, 200, 4), median_se(x, 200, 4));
}

TEST(Config, DefaultsValidate) {
    ExperimentConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.phase_count, 600);
    EXPECT_TRUE(c.runs(qpe::Protocol::Ipe));
    EXPECT_TRUE(c.runs(qpe::Protocol::Kitaev));
}

TEST(Config, JsonRoundTrip) {
    auto c = small_config();
    c.device.meas_reset_latency = 2e-6;
    c.protocol = "ipe";
    c.phases = {0.1, 0.2};
    c.method = qpe::IpeMethod::MostLikely;
    c.error_map.t_grid = {55e-6};
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_EQ(back.device.meas_reset_latency, 2e-6);
    EXPECT_EQ(back.phases, c.phases);
    EXPECT_FALSE(back.runs(qpe::Protocol::Kitaev));
}

TEST(Config, ParsesShorthands) {
    const auto c = config_from_json(json::parse(R"({"bits": [2, 6], "phases": {"count": 50},
        "device": {"t1": [5e-5], "t2": 4e-5, "p_assign_1given0": 0.02}, "sampling": "shot_by_shot"})"));
    EXPECT_EQ(c.m_min, 2u);
    EXPECT_EQ(c.m_max, 6u);
    EXPECT_EQ(c.phase_count, 50);
    EXPECT_EQ(c.device.t1_of(1), 5e-5);
    EXPECT_EQ(c.device.t2_of(0), 4e-5);
    EXPECT_EQ(c.device.p_assign_0given1, 0.01);
    EXPECT_EQ(c.sampling, qpe::Sampling::ShotByShot);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(config_from_json(json::parse(R"({"sed": 3})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(json::parse(R"({"device": {"T1": 1}})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(json::parse(R"({"protocol": "qft"})")).validate(), std::invalid_argument);
    ExperimentConfig c;
    c.resources = {0};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.phases = {1.0};
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, QuickGrids) {
    ExperimentConfig c;
    apply_quick(c);
    EXPECT_EQ(c.phase_count, 100);
    EXPECT_TRUE(c.quick);
    EXPECT_EQ(default_sweep_resources(c), (std::vector<long>{20, 50, 70, 100, 200, 500}));
    EXPECT_EQ(default_bits_resources(c), (std::vector<long>{50, 70, 200}));
}

TEST(Config, PhaseSetIsSeededAndInRange) {
    auto c = small_config();
    const auto a = phase_set(c);
    EXPECT_EQ(a.size(), 12u);
    EXPECT_EQ(a, phase_set(c));
    for (double p : a) {
        EXPECT_GE(p, 0.0);
        EXPECT_LT(p, 1.0);
    }
    c.seed = 100;
    EXPECT_NE(a, phase_set(c));
    c.phases = {0.25};
    EXPECT_EQ(phase_set(c), (std::vector<double>{0.25}));
}

TEST(Sweeps, RowCountsMatchGrid) {
    const auto c = small_config();
    const auto r = sweep_bits(c);
    EXPECT_EQ(r.rows.size(), 2u * 4u * 2u * 12u);
    EXPECT_EQ(r.summary.size(), 2u * 4u * 2u);
    for (const auto& s : r.summary) EXPECT_DOUBLE_EQ(s.lower_bound, std::ldexp(1.0, -int(s.m) - 1));
}

TEST(Sweeps, SeedsFollowDocumentedDerivation) {
    const auto c = small_config();
    const auto rows = run_grid(c.device, {qpe::Protocol::Ipe}, {3}, {30}, phase_set(c), c.method, c.sampling,
                               c.seed, 1);
    for (const auto& row : rows) EXPECT_EQ(row.seed, derive_seed(c.seed, {kTagIpe, 3, 30, row.phase_index, 0}));
}

TEST(Sweeps, BudgetBoundaries) {
    const std::vector<double> phases{0.3};
    const auto dev = noise::DeviceParams::paper_defaults();
    auto rows = run_grid(dev, {qpe::Protocol::Kitaev}, {1}, {2}, phases, qpe::IpeMethod::MostLikely,
                         qpe::Sampling::Exact, 1, 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].skipped);
    EXPECT_EQ(rows[0].shots, 1);
    rows = run_grid(dev, {qpe::Protocol::Kitaev}, {3}, {5}, phases, qpe::IpeMethod::MostLikely, qpe::Sampling::Exact,
                    1, 1);
    EXPECT_TRUE(rows[0].skipped);
    auto c = small_config();
    c.resources = {0};
    EXPECT_THROW(sweep_resources(c), std::invalid_argument);
}

TEST(Sweeps, NoiselessIpeMedianWithinBound) {
    ExperimentConfig c;
    c.device = noise::DeviceParams::noiseless();
    c.protocol = "ipe";
    c.m_min = c.m_max = 5;
    c.resources = {200};
    c.phase_count = 300;
    const auto r = sweep_bits(c);
    ASSERT_EQ(r.summary.size(), 1u);
    EXPECT_LE(r.summary[0].median_error, 1.0 / 64);
}

TEST(Sweeps, HarshNoiseHasInteriorOptimum) {
    // Short coherence: extra bits first help, then the longer feedback chain
    // costs more than the finer resolution gains.
    ExperimentConfig c;
    c.device = noise::DeviceParams::uniform_coherence(8e-6, 1.4e-6, 0.01, 0.01);
    c.protocol = "ipe";
    c.resources = {50};
    c.phase_count = 200;
    const auto r = sweep_bits(c);
    std::vector<double> med;
    for (const auto& s : r.summary) med.push_back(s.median_error);
    const auto best = std::min_element(med.begin(), med.end()) - med.begin();
    EXPECT_GT(best, 0);
    EXPECT_LT(best, 9);
    EXPECT_GT(med.back(), 3 * med[best]);
    EXPECT_GT(med.front(), 3 * med[best]);
}

TEST(Sweeps, PaperNoiseMeanErrorTurnsUpAtFiftyResources) {
    ExperimentConfig c;
    c.protocol = "ipe";
    c.resources = {50};
    c.phase_count = 400;
    const auto rows = sweep_bits(c).rows;
    std::vector<std::vector<double>> err(11);
    for (const auto& row : rows) err[row.m].push_back(row.error);
    std::vector<double> means;
    for (unsigned m = 1; m <= 10; ++m) means.push_back(mean(err[m]));
    const auto best = unsigned(std::min_element(means.begin(), means.end()) - means.begin()) + 1;
    EXPECT_GT(best, 1u);
    EXPECT_LT(best, 10u);
    // Paired per phase, so the bootstrap resamples phases jointly.
    const auto& a = err[10];
    const auto& b = err[best];
    const double se = bootstrap_se(
        a.size(),
        [&](std::span<const std::size_t> idx) {
            double s = 0;
            for (auto i : idx) s += a[i] - b[i];
            return s / double(idx.size());
        },
        400, 5);
    EXPECT_GT(means[9] - means[best - 1], 3 * se);
}

TEST(Sweeps, ThreadCountDoesNotChangeResults) {
    auto c = small_config();
    c.threads = 1;
    const auto a = sweep_bits(c);
    c.threads = 5;
    const auto b = sweep_bits(c);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].estimate, b.rows[i].estimate);
        EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
    }
}

TEST(Sweeps, OptimalBitsPickMinimum) {
    auto c = small_config();
    const auto r = sweep_resources(c);
    EXPECT_EQ(r.optimal.size(), 4u);
    for (const auto& o : r.optimal) {
        for (const auto& s : r.sweep.summary) {
            if (s.protocol == o.protocol && s.resources == o.resources && !s.skipped) {
                EXPECT_LE(o.median_error, s.median_error);
            }
        }
    }
}

TEST(ErrorMap, IdealCellApproachesNoiseless) {
    ExperimentConfig c;
    c.phase_count = 100;
    c.error_map.t_grid = {1.0};
    c.error_map.latency_grid = {0.0};
    c.error_map.resources = {50};
    c.error_map.p_assign = 0.0;
    c.error_map.p_reset = 0.0;
    const auto cells = error_map(c);
    ASSERT_EQ(cells.size(), 1u);
    auto n = c;
    n.device = noise::DeviceParams::noiseless();
    n.protocol = "ipe";
    n.m_min = n.m_max = 6;
    n.resources = {50};
    const auto ideal = sweep_bits(n);
    EXPECT_NEAR(cells[0].ipe_median, ideal.summary[0].median_error, 0.2 * ideal.summary[0].median_error);
}

TEST(Estimators, SingleShotAllMethodsAgree) {
    ExperimentConfig c;
    c.phase_count = 50;
    c.shootout.resources = {5};
    const auto pts = estimator_shootout(c);
    std::vector<double> ref;
    for (const auto& p : pts) {
        if (p.method == "kitaev") continue;
        EXPECT_EQ(p.shots, 1);
        if (ref.empty()) ref = p.errors;
        ASSERT_EQ(p.errors.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(p.errors[i], ref[i], 1e-12) << p.method;
    }
}

TEST(Estimators, MostLikelyFlattensAtQuantisation) {
    ExperimentConfig c;
    c.phase_count = 300;
    c.shootout.resources = {500, 1000};
    const auto pts = estimator_shootout(c);
    double ml500 = 0, ml1000 = 0, t2c1000 = 0;
    for (const auto& p : pts) {
        if (p.method == "most_likely") (p.resources == 500 ? ml500 : ml1000) = p.mean_error;
        if (p.method == "top2_consecutive" && p.resources == 1000) t2c1000 = p.mean_error;
    }
    EXPECT_LT(ml1000, 1.0 / 64);
    EXPECT_NEAR(ml1000, ml500, 0.1 * ml500);
    EXPECT_LT(t2c1000, 0.5 * ml1000);
}

TEST(ResetDemo, PerfectDeviceStaysInGround) {
    ExperimentConfig c;
    c.reset_demo.p_assign_1given0 = 0;
    c.reset_demo.p_assign_0given1 = 0;
    c.reset_demo.pointer_t1 = std::numeric_limits<double>::infinity();
    c.reset_demo.pointer_t2 = std::numeric_limits<double>::infinity();
    c.reset_demo.calibrate = false;
    c.reset_demo.p_reset = 0;
    c.reset_demo.shots = 2000;
    const auto r = reset_demo(c);
    ASSERT_EQ(r.cycles.size(), 4u);
    for (const auto& cy : r.cycles) {
        EXPECT_EQ(cy.p1_exact, 0.0);
        EXPECT_EQ(cy.p1_sampled, 0.0);
        EXPECT_EQ(cy.fidelity, 1.0);
    }
}

TEST(ResetDemo, SecondCycleBetterThanFirst) {
    ExperimentConfig c;
    c.reset_demo.shots = 20000;
    const auto r = reset_demo(c);
    EXPECT_NEAR(r.cycles[0].p1_exact, 0.0165, 1e-6);
    EXPECT_LT(r.cycles[1].p1_exact, r.cycles[0].p1_exact);
    EXPECT_NEAR(r.cycles[0].hellinger_sq, 1 - std::sqrt(1 - r.cycles[0].p1_exact), 1e-12);
    const auto exact = reset_demo_exact(c.reset_demo, r.p_reset);
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_EQ(exact[i], r.cycles[i].p1_exact);
}

TEST(Output, SchemasMatchWrittenHeaders) {
    const auto dir = temp_dir("schema");
    auto c = small_config();
    const auto sweep = sweep_bits(c);
    write_sweep(dir.string(), "sweep_bits", sweep);
    EXPECT_EQ(header_of(dir / "sweep_bits_runs.csv"), schema::kRuns);
    EXPECT_EQ(header_of(dir / "sweep_bits.csv"), schema::kSummary);
    EXPECT_EQ(data_rows(dir / "sweep_bits_runs.csv"), sweep.rows.size());
    EXPECT_EQ(data_rows(dir / "sweep_bits.csv"), sweep.summary.size());

    const auto rs = sweep_resources(c);
    write_resource_sweep(dir.string(), rs);
    EXPECT_EQ(header_of(dir / "optimal_bits.csv"), schema::kOptimal);
    EXPECT_EQ(data_rows(dir / "optimal_bits.csv"), rs.optimal.size());

    auto m = c;
    m.error_map.t_grid = {20e-6, 55e-6};
    m.error_map.latency_grid = {0.5e-6, 1.4e-6, 5e-6};
    m.error_map.resources = {50};
    const auto cells = error_map(m);
    EXPECT_EQ(cells.size(), 6u);
    write_error_map(dir.string(), cells);
    EXPECT_EQ(header_of(dir / "error_map.csv"), schema::kErrorMap);
    EXPECT_EQ(data_rows(dir / "error_map.csv"), 6u);

    auto e = c;
    e.shootout.resources = {10, 25};
    const auto pts = estimator_shootout(e);
    EXPECT_EQ(pts.size(), 10u);
    write_estimators(dir.string(), pts);
    EXPECT_EQ(header_of(dir / "estimators.csv"), schema::kEstimators);

    auto rd = c;
    rd.reset_demo.shots = 1000;
    write_reset_demo(dir.string(), reset_demo(rd));
    EXPECT_EQ(header_of(dir / "reset_demo.csv"), schema::kResetDemo);
    EXPECT_EQ(data_rows(dir / "reset_demo.csv"), 4u);

    write_manifest(dir.string(), "test", c, {"sweep_bits.csv"});
    const auto man = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(man.at("config_hash"), config_hash(c));
    EXPECT_EQ(man.at("seed"), c.seed);
    EXPECT_EQ(man.at("version"), tool_version());
}

TEST(Output, RerunsAreByteIdentical) {
    auto c = small_config();
    const auto a = temp_dir("rerun_a");
    const auto b = temp_dir("rerun_b");
    c.threads = 1;
    write_sweep(a.string(), "sweep_bits", sweep_bits(c));
    write_manifest(a.string(), "sweep-bits", c, {});
    c.threads = 4;
    write_sweep(b.string(), "sweep_bits", sweep_bits(c));
    c.threads = 1;
    write_manifest(b.string(), "sweep-bits", c, {});
    for (const char* f : {"sweep_bits_runs.csv", "sweep_bits.csv", "manifest.json"}) {
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
}

TEST(Output, NumberFormatting) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(std::stod(format_number(1.0 / 3)), 1.0 / 3);
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
