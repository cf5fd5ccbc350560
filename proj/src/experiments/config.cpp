#include "dqc/experiments/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "dqc/experiments/seeding.hpp"
#include "dqc/qpe/phase.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::experiments {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) {
        throw std::invalid_argument(where + ": expected an object");
    }
    std::set<std::string> ok(known.begin(), known.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!ok.count(it.key())) {
            throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
        }
    }
}

template <class T>
void take(const json& j, const char* key, T& dst) {
    if (j.contains(key)) {
        dst = j.at(key).get<T>();
    }
}

std::vector<double> as_vector(const json& v) {
    if (v.is_number()) {
        return {v.get<double>()};
    }
    return v.get<std::vector<double>>();
}

}  // namespace

json device_to_json(const noise::DeviceParams& d) {
    return {{"t1", d.t1},
            {"t2", d.t2},
            {"single_gate_len", d.single_gate_len},
            {"cnot_len", d.cnot_len},
            {"meas_reset_latency", d.meas_reset_latency},
            {"p_assign_1given0", d.p_assign_1given0},
            {"p_assign_0given1", d.p_assign_0given1},
            {"p_reset_excited", d.p_reset_excited},
            {"epg_single", d.epg_single},
            {"epg_cnot", d.epg_cnot},
            {"gate_depolarizing_enabled", d.gate_depolarizing_enabled},
            {"pointer_flip_delay", d.pointer_flip_delay}};
}

noise::DeviceParams device_from_json(const json& j, noise::DeviceParams d) {
    reject_unknown(j,
                   {"t1", "t2", "single_gate_len", "cnot_len", "meas_reset_latency", "p_assign_1given0",
                    "p_assign_0given1", "p_reset_excited", "epg_single", "epg_cnot", "gate_depolarizing_enabled",
                    "pointer_flip_delay"},
                   "device");
    if (j.contains("t1")) d.t1 = as_vector(j["t1"]);
    if (j.contains("t2")) d.t2 = as_vector(j["t2"]);
    if (j.contains("epg_single")) d.epg_single = as_vector(j["epg_single"]);
    take(j, "single_gate_len", d.single_gate_len);
    take(j, "cnot_len", d.cnot_len);
    take(j, "meas_reset_latency", d.meas_reset_latency);
    take(j, "p_assign_1given0", d.p_assign_1given0);
    take(j, "p_assign_0given1", d.p_assign_0given1);
    take(j, "p_reset_excited", d.p_reset_excited);
    take(j, "epg_cnot", d.epg_cnot);
    take(j, "gate_depolarizing_enabled", d.gate_depolarizing_enabled);
    take(j, "pointer_flip_delay", d.pointer_flip_delay);
    d.validate();
    return d;
}

bool ExperimentConfig::runs(qpe::Protocol p) const {
    return protocol == "both" || protocol == qpe::to_string(p);
}

void ExperimentConfig::validate() const {
    device.validate();
    if (protocol != "both" && protocol != "ipe" && protocol != "kitaev") {
        throw std::invalid_argument("protocol must be ipe, kitaev or both");
    }
    if (m_min < 1 || m_max < m_min || m_max > 20) {
        throw std::invalid_argument("bit range must satisfy 1 <= min <= max <= 20");
    }
    for (long r : resources) {
        if (r <= 0) {
            throw std::invalid_argument("resources must be positive");
        }
    }
    if (phases.empty() && phase_count < 1) {
        throw std::invalid_argument("phase count must be >= 1");
    }
    for (double p : phases) {
        if (!(p >= 0.0 && p < 1.0)) {
            throw std::invalid_argument("explicit phases must lie in [0, 1)");
        }
    }
    for (double t : error_map.t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("error_map.t_grid entries must be positive");
    }
    for (double l : error_map.latency_grid) {
        if (!(l >= 0.0)) throw std::invalid_argument("error_map.latency_grid entries must be >= 0");
    }
    for (long r : error_map.resources) {
        if (r <= 0) throw std::invalid_argument("error_map.resources must be positive");
    }
    if (error_map.bits < 1 || shootout.bits < 1) {
        throw std::invalid_argument("bit counts must be >= 1");
    }
    if (reset_demo.cycles < 1 || reset_demo.shots < 1) {
        throw std::invalid_argument("reset_demo needs >= 1 cycle and shot");
    }
}

ExperimentConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"device", "protocol", "bits", "resources", "phases", "method", "sampling", "seed", "threads",
                    "out", "quick", "error_map", "shootout", "reset_demo", "readout"},
                   "config");
    ExperimentConfig c;
    if (j.contains("device")) c.device = device_from_json(j["device"], c.device);
    take(j, "protocol", c.protocol);
    if (j.contains("bits")) {
        const auto& b = j["bits"];
        if (b.is_array() && b.size() == 2) {
            c.m_min = b[0].get<unsigned>();
            c.m_max = b[1].get<unsigned>();
        } else if (b.is_number()) {
            c.m_min = c.m_max = b.get<unsigned>();
        } else {
            throw std::invalid_argument("bits: expected [min, max] or a number");
        }
    }
    take(j, "resources", c.resources);
    if (j.contains("phases")) {
        const auto& p = j["phases"];
        if (p.is_array()) {
            c.phases = p.get<std::vector<double>>();
        } else {
            reject_unknown(p, {"count", "values"}, "phases");
            take(p, "count", c.phase_count);
            take(p, "values", c.phases);
        }
    }
    if (j.contains("method")) c.method = qpe::parse_ipe_method(j["method"].get<std::string>());
    if (j.contains("sampling")) {
        const auto s = j["sampling"].get<std::string>();
        if (s == "exact") c.sampling = qpe::Sampling::Exact;
        else if (s == "shot_by_shot") c.sampling = qpe::Sampling::ShotByShot;
        else throw std::invalid_argument("sampling must be exact or shot_by_shot");
    }
    take(j, "seed", c.seed);
    take(j, "threads", c.threads);
    take(j, "out", c.out);
    take(j, "quick", c.quick);
    if (j.contains("error_map")) {
        const auto& e = j["error_map"];
        reject_unknown(e, {"t_grid", "latency_grid", "resources", "bits", "p_assign", "p_reset"}, "error_map");
        take(e, "t_grid", c.error_map.t_grid);
        take(e, "latency_grid", c.error_map.latency_grid);
        take(e, "resources", c.error_map.resources);
        take(e, "bits", c.error_map.bits);
        take(e, "p_assign", c.error_map.p_assign);
        take(e, "p_reset", c.error_map.p_reset);
    }
    if (j.contains("shootout")) {
        const auto& s = j["shootout"];
        reject_unknown(s, {"bits", "resources"}, "shootout");
        take(s, "bits", c.shootout.bits);
        take(s, "resources", c.shootout.resources);
    }
    if (j.contains("reset_demo")) {
        const auto& r = j["reset_demo"];
        auto& d = c.reset_demo;
        reject_unknown(r,
                       {"p_assign_1given0", "p_assign_0given1", "pointer_t1", "pointer_t2", "cycle", "flip_delay",
                        "cycles", "shots", "calibrate", "first_cycle_target", "p_reset"},
                       "reset_demo");
        take(r, "p_assign_1given0", d.p_assign_1given0);
        take(r, "p_assign_0given1", d.p_assign_0given1);
        take(r, "pointer_t1", d.pointer_t1);
        take(r, "pointer_t2", d.pointer_t2);
        take(r, "cycle", d.cycle);
        take(r, "flip_delay", d.flip_delay);
        take(r, "cycles", d.cycles);
        take(r, "shots", d.shots);
        take(r, "calibrate", d.calibrate);
        take(r, "first_cycle_target", d.first_cycle_target);
        take(r, "p_reset", d.p_reset);
    }
    if (j.contains("readout")) {
        const auto& r = j["readout"];
        reject_unknown(r, {"noise", "nbar", "echo_alpha_c", "echo_n0", "traces", "fisher"}, "readout");
        take(r, "noise", c.readout.noise);
        take(r, "nbar", c.readout.nbar);
        take(r, "echo_alpha_c", c.readout.echo_alpha_c);
        take(r, "echo_n0", c.readout.echo_n0);
        take(r, "traces", c.readout.traces);
        take(r, "fisher", c.readout.fisher);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
    const auto& r = c.reset_demo;
    return {{"device", device_to_json(c.device)},
            {"protocol", c.protocol},
            {"bits", {c.m_min, c.m_max}},
            {"resources", c.resources},
            {"phases", {{"count", c.phase_count}, {"values", c.phases}}},
            {"method", qpe::to_string(c.method)},
            {"sampling", c.sampling == qpe::Sampling::Exact ? "exact" : "shot_by_shot"},
            {"seed", c.seed},
            {"threads", c.threads},
            {"out", c.out},
            {"quick", c.quick},
            {"error_map",
             {{"t_grid", c.error_map.t_grid},
              {"latency_grid", c.error_map.latency_grid},
              {"resources", c.error_map.resources},
              {"bits", c.error_map.bits},
              {"p_assign", c.error_map.p_assign},
              {"p_reset", c.error_map.p_reset}}},
            {"shootout", {{"bits", c.shootout.bits}, {"resources", c.shootout.resources}}},
            {"reset_demo",
             {{"p_assign_1given0", r.p_assign_1given0},
              {"p_assign_0given1", r.p_assign_0given1},
              {"pointer_t1", r.pointer_t1},
              {"pointer_t2", r.pointer_t2},
              {"cycle", r.cycle},
              {"flip_delay", r.flip_delay},
              {"cycles", r.cycles},
              {"shots", r.shots},
              {"calibrate", r.calibrate},
              {"first_cycle_target", r.first_cycle_target},
              {"p_reset", r.p_reset}}},
            {"readout",
             {{"noise", c.readout.noise},
              {"nbar", c.readout.nbar},
              {"echo_alpha_c", c.readout.echo_alpha_c},
              {"echo_n0", c.readout.echo_n0},
              {"traces", c.readout.traces},
              {"fisher", c.readout.fisher}}}};
}

void apply_quick(ExperimentConfig& c) {
    c.quick = true;
    if (c.phases.empty()) {
        c.phase_count = 100;
    }
    c.error_map.t_grid = {10e-6, 20e-6, 55e-6, 160e-6};
    c.error_map.latency_grid = {0.2e-6, 1.0e-6, 1.4e-6, 2e-6, 5e-6, 10e-6};
    c.error_map.resources = {50};
    c.shootout.resources = {5, 10, 25, 50, 100, 200, 500};
    c.reset_demo.shots = 20000;
    c.readout.traces = 2000;
}

std::vector<double> phase_set(const ExperimentConfig& c) {
    if (!c.phases.empty()) {
        return c.phases;
    }
    sim::Rng rng(derive_seed(c.seed, {kTagPhases}));
    std::vector<double> out(static_cast<std::size_t>(c.phase_count));
    for (auto& p : out) {
        p = rng.uniform();
    }
    return out;
}

}  // namespace dqc::experiments
