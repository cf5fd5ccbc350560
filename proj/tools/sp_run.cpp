#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "dqc/experiments/config.hpp"
#include "sp_commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Emulate a sequence-processor program against the noisy simulator"};
    std::string bin;
    std::uint64_t seed = 1;
    long shots = 1000;
    std::string config;
    bool noiseless = false;
    app.add_option("program", bin, "binary program")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "rng seed");
    app.add_option("--shots", shots, "number of runs")->check(CLI::PositiveNumber);
    app.add_option("--config", config, "JSON config; its device object sets the noise");
    app.add_flag("--noiseless", noiseless, "ideal device");
    CLI11_PARSE(app, argc, argv);
    try {
        dqc::noise::DeviceParams dev = dqc::noise::DeviceParams::paper_defaults();
        if (!config.empty()) {
            dev = dqc::experiments::load_config(config).device;
        }
        if (noiseless) {
            dev = dqc::noise::DeviceParams::noiseless();
        }
        dqc::tools::sp_run_file(bin, seed, shots, dev, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "sp-run: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
