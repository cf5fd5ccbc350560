// Command-line harness for the phase-estimation, reset and readout experiments.
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "dqc/experiments/config.hpp"
#include "dqc/experiments/output.hpp"
#include "dqc/experiments/readout_fit.hpp"
#include "dqc/experiments/reset_demo.hpp"
#include "dqc/experiments/sweeps.hpp"
#include "sp_commands.hpp"

namespace ex = dqc::experiments;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
    bool quick = false;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_flag("--quick", quick, "CI-scale grids");
    }

    ex::ExperimentConfig load() const {
        ex::ExperimentConfig c = config.empty() ? ex::ExperimentConfig{} : ex::load_config(config);
        if (quick || c.quick) ex::apply_quick(c);
        if (seed) c.seed = *seed;
        if (out) c.out = *out;
        if (threads) c.threads = *threads;
        return c;
    }
};

void report_files(const std::string& dir, const std::vector<std::string>& files) {
    for (const auto& f : files) {
        std::cerr << "wrote " << dir << '/' << f << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic-circuit phase estimation workbench"};
    app.require_subcommand(1);

    Common common;

    // Single-protocol runs over the phase set at one (m, R).
    unsigned bits = 5;
    long resources = 50;
    std::vector<double> phases;
    std::string method;
    bool shot_by_shot = false;
    auto add_run = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        common.attach(sub);
        sub->add_option("--bits", bits, "number of phase bits m")->check(CLI::Range(1, 20));
        sub->add_option("--resources", resources, "measurement budget R")->check(CLI::PositiveNumber);
        sub->add_option("--phase", phases, "explicit phase(s) in [0, 1)");
        sub->add_option("--method", method, "IPE estimator");
        sub->add_flag("--shot-by-shot", shot_by_shot, "simulate every shot instead of sampling the exact distribution");
        return sub;
    };
    auto* ipe = add_run("ipe", "iterative phase estimation over the phase set");
    auto* kitaev = add_run("kitaev", "Kitaev phase estimation over the phase set");

    auto* sweep_bits = app.add_subcommand("sweep-bits", "error against number of bits at fixed budgets");
    common.attach(sweep_bits);
    auto* sweep_res = app.add_subcommand("sweep-resources", "best error against budget");
    common.attach(sweep_res);
    auto* emap = app.add_subcommand("error-map", "coherence x latency error map");
    common.attach(emap);
    auto* est = app.add_subcommand("estimators", "noiseless comparison of IPE estimators");
    common.attach(est);
    auto* reset = app.add_subcommand("reset-demo", "repeated measure and reset of the pointer");
    common.attach(reset);
    auto* rfit = app.add_subcommand("readout-fit", "synthetic readout characterisation round trip");
    common.attach(rfit);

    std::string asm_in;
    std::string asm_out = "a.spbin";
    auto* spasm = app.add_subcommand("sp-asm", "assemble sequence-processor source");
    spasm->add_option("input", asm_in)->required()->check(CLI::ExistingFile);
    spasm->add_option("-o,--output", asm_out);

    std::string run_bin;
    long run_shots = 1000;
    std::uint64_t run_seed = 1;
    std::string run_config;
    auto* sprun = app.add_subcommand("sp-run", "emulate a binary program");
    sprun->add_option("program", run_bin)->required()->check(CLI::ExistingFile);
    sprun->add_option("--shots", run_shots)->check(CLI::PositiveNumber);
    sprun->add_option("--seed", run_seed);
    sprun->add_option("--config", run_config)->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spasm->parsed()) {
            dqc::tools::sp_assemble_file(asm_in, asm_out, std::cerr);
            return 0;
        }
        if (sprun->parsed()) {
            const auto dev = run_config.empty() ? dqc::noise::DeviceParams::paper_defaults()
                                                : ex::load_config(run_config).device;
            dqc::tools::sp_run_file(run_bin, run_seed, run_shots, dev, std::cout);
            return 0;
        }

        ex::ExperimentConfig c = common.load();
        std::vector<std::string> files;
        std::string command;

        if (ipe->parsed() || kitaev->parsed()) {
            const auto proto = ipe->parsed() ? dqc::qpe::Protocol::Ipe : dqc::qpe::Protocol::Kitaev;
            command = dqc::qpe::to_string(proto);
            c.protocol = command;
            c.m_min = c.m_max = bits;
            c.resources = {resources};
            if (!phases.empty()) c.phases = phases;
            if (!method.empty()) c.method = dqc::qpe::parse_ipe_method(method);
            if (shot_by_shot) c.sampling = dqc::qpe::Sampling::ShotByShot;
            c.validate();
            ex::SweepResult r;
            r.rows = ex::run_grid(c.device, {proto}, {bits}, c.resources, ex::phase_set(c), c.method, c.sampling,
                                  c.seed, c.threads);
            r.summary = ex::summarize(r.rows);
            files = ex::write_sweep(c.out, command, r);
            for (const auto& s : r.summary) {
                std::printf("%s m=%u R=%ld shots/circuit=%ld phases=%zu median_error=%.6g mean_error=%.6g\n",
                            command.c_str(), s.m, s.resources, s.shots, s.n, s.median_error, s.mean_error);
            }
        } else if (sweep_bits->parsed()) {
            command = "sweep-bits";
            c.resources = ex::default_bits_resources(c);
            files = ex::write_sweep(c.out, "sweep_bits", ex::sweep_bits(c));
        } else if (sweep_res->parsed()) {
            command = "sweep-resources";
            c.resources = ex::default_sweep_resources(c);
            const auto r = ex::sweep_resources(c);
            files = ex::write_resource_sweep(c.out, r);
            for (const auto& o : r.optimal) {
                std::printf("%-6s R=%-5ld best_m=%-2u median_error=%.4g\n", dqc::qpe::to_string(o.protocol).c_str(),
                            o.resources, o.best_m, o.median_error);
            }
        } else if (emap->parsed()) {
            command = "error-map";
            files = ex::write_error_map(c.out, ex::error_map(c));
        } else if (est->parsed()) {
            command = "estimators";
            files = ex::write_estimators(c.out, ex::estimator_shootout(c));
        } else if (reset->parsed()) {
            command = "reset-demo";
            const auto r = ex::reset_demo(c);
            files = ex::write_reset_demo(c.out, r);
            std::printf("excitation per reset %.5f\n", r.p_reset);
            for (const auto& cyc : r.cycles) {
                std::printf("cycle %d  P(1) %.5f  sampled %.5f +- %.5f  reported %.5f  fidelity %.5f\n", cyc.cycle,
                            cyc.p1_exact, cyc.p1_sampled, cyc.p1_stderr, cyc.p1_reported, cyc.fidelity);
            }
        } else if (rfit->parsed()) {
            command = "readout-fit";
            const auto r = ex::readout_fit(c);
            files = ex::write_readout_fit(c.out, r);
            for (const auto& rec : r.records) {
                std::printf("%-24s %.6g\n", rec.parameter.c_str(), rec.value);
            }
        }
        ex::write_manifest(c.out, command, c, files);
        files.push_back("manifest.json");
        report_files(c.out, files);
    } catch (const std::exception& e) {
        std::cerr << "dqc: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
