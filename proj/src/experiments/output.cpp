#include "dqc/experiments/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dqc/readout/csv_io.hpp"

#ifndef DQC_VERSION
#define DQC_VERSION "unknown"
#endif

namespace dqc::experiments {

namespace schema {
const std::vector<std::string> kRuns{"protocol", "m", "R", "phase_index", "phase", "estimate",
                                     "circular_error", "shots_used", "seed", "skipped"};
const std::vector<std::string> kSummary{"protocol", "m", "R", "n_phases", "median_error", "mean_error",
                                        "lower_bound", "shots_per_circuit", "skipped"};
const std::vector<std::string> kOptimal{"protocol", "R", "best_m", "median_error", "mean_error"};
const std::vector<std::string> kErrorMap{"T_s", "latency_s", "m", "R", "ipe_median", "kitaev_median",
                                         "difference", "ipe_mean", "kitaev_mean", "n_phases"};
const std::vector<std::string> kEstimators{"method", "R", "shots_per_circuit", "mean_error", "median_error",
                                           "mean_stderr", "n_phases", "skipped"};
const std::vector<std::string> kResetDemo{"cycle",        "p1_exact", "p1_sampled", "p1_stderr", "p1_reported",
                                          "hellinger_sq", "fidelity", "p_reset",    "shots"};
const std::vector<std::string> kDephasing{"curve", "nbar_true", "delta_r_hz", "one_plus_x", "one_minus_y",
                                          "fit_one_plus_x", "fit_one_minus_y"};
const std::vector<std::string> kEcho{"t_s", "signal", "fit"};
const std::vector<std::string> kKernel{"t_s", "kernel_i", "kernel_q", "mean0_i", "mean0_q", "mean1_i", "mean1_q"};
}  // namespace schema

namespace {

class CsvFile {
public:
    CsvFile(const std::string& dir, const std::string& name, const std::vector<std::string>& header)
        : path_((std::filesystem::path(dir) / name).string()), out_(path_) {
        if (!out_) {
            throw std::runtime_error("cannot write " + path_);
        }
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? "," : "") << cells[i];
        }
        out_ << '\n';
    }
    ~CsvFile() noexcept(false) {
        out_.flush();
        if (!out_ && std::uncaught_exceptions() == 0) {
            throw std::runtime_error("write failed for " + path_);
        }
    }

private:
    std::string path_;
    std::ofstream out_;
};

std::string num(double v) { return format_number(v); }
std::string num(long v) { return std::to_string(v); }
std::string num(unsigned v) { return std::to_string(v); }
std::string num(unsigned long v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const ExperimentConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_to_json(c).dump())));
    return buf;
}

std::vector<std::string> write_sweep(const std::string& dir, const std::string& stem, const SweepResult& r) {
    ensure_dir(dir);
    {
        CsvFile f(dir, stem + "_runs.csv", schema::kRuns);
        for (const auto& row : r.rows) {
            f.row({qpe::to_string(row.protocol), num(row.m), num(row.resources), num(row.phase_index), num(row.phase),
                   num(row.estimate), num(row.error), num(row.shots), num(row.seed), num(row.skipped ? 1 : 0)});
        }
    }
    {
        CsvFile f(dir, stem + ".csv", schema::kSummary);
        for (const auto& s : r.summary) {
            f.row({qpe::to_string(s.protocol), num(s.m), num(s.resources), num(s.n), num(s.median_error),
                   num(s.mean_error), num(s.lower_bound), num(s.shots), num(s.skipped ? 1 : 0)});
        }
    }
    return {stem + "_runs.csv", stem + ".csv"};
}

std::vector<std::string> write_resource_sweep(const std::string& dir, const ResourceSweep& r) {
    auto files = write_sweep(dir, "sweep_resources", r.sweep);
    CsvFile f(dir, "optimal_bits.csv", schema::kOptimal);
    for (const auto& o : r.optimal) {
        f.row({qpe::to_string(o.protocol), num(o.resources), num(o.best_m), num(o.median_error), num(o.mean_error)});
    }
    files.push_back("optimal_bits.csv");
    return files;
}

std::vector<std::string> write_error_map(const std::string& dir, const std::vector<MapCell>& cells) {
    ensure_dir(dir);
    CsvFile f(dir, "error_map.csv", schema::kErrorMap);
    for (const auto& c : cells) {
        f.row({num(c.t), num(c.latency), num(c.m), num(c.resources), num(c.ipe_median), num(c.kitaev_median),
               num(c.ipe_median - c.kitaev_median), num(c.ipe_mean), num(c.kitaev_mean), num(c.ipe_errors.size())});
    }
    return {"error_map.csv"};
}

std::vector<std::string> write_estimators(const std::string& dir, const std::vector<ShootoutPoint>& points) {
    ensure_dir(dir);
    CsvFile f(dir, "estimators.csv", schema::kEstimators);
    for (const auto& p : points) {
        f.row({p.method, num(p.resources), num(p.shots), num(p.mean_error), num(p.median_error), num(p.mean_stderr),
               num(p.errors.size()), num(p.skipped ? 1 : 0)});
    }
    return {"estimators.csv"};
}

std::vector<std::string> write_reset_demo(const std::string& dir, const ResetDemoResult& r) {
    ensure_dir(dir);
    CsvFile f(dir, "reset_demo.csv", schema::kResetDemo);
    for (const auto& c : r.cycles) {
        f.row({num(c.cycle), num(c.p1_exact), num(c.p1_sampled), num(c.p1_stderr), num(c.p1_reported), num(c.hellinger_sq),
               num(c.fidelity), num(r.p_reset), num(r.shots)});
    }
    return {"reset_demo.csv"};
}

std::vector<std::string> write_readout_fit(const std::string& dir, const ReadoutFitResult& r) {
    ensure_dir(dir);
    auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
    readout::write_csv(path("dressed_dephasing.csv"), r.dephasing);
    readout::write_csv(path("photon_echo.csv"), r.echo_data);
    readout::write_csv(path("matched_filter.csv"), r.kernel);
    readout::write_fit_report(path("readout_fit.json"), r.records);
    return {"dressed_dephasing.csv", "photon_echo.csv", "matched_filter.csv", "readout_fit.json"};
}

void write_manifest(const std::string& dir, const std::string& command, const ExperimentConfig& c,
                    const std::vector<std::string>& files) {
    ensure_dir(dir);
    nlohmann::json j{{"tool", "dqc"},
                     {"version", tool_version()},
                     {"command", command},
                     {"seed", c.seed},
                     {"config_hash", config_hash(c)},
                     {"hash", "fnv1a64"},
                     {"config", config_to_json(c)},
                     {"files", files}};
    std::ofstream out((std::filesystem::path(dir) / "manifest.json").string());
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write manifest in " + dir);
    }
}

const char* tool_version() { return DQC_VERSION; }

}  // namespace dqc::experiments
