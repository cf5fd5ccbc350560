#include "dqc/noise/device_params.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace dqc::noise {

namespace {

double pick(const std::vector<double>& v, unsigned qubit, const char* name) {
    if (v.empty()) {
        throw std::invalid_argument(std::string("DeviceParams: empty ") + name);
    }
    return qubit < v.size() ? v[qubit] : v.back();
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("DeviceParams: ") + name + " must be in [0,1]");
    }
}

void check_duration(double t, const char* name) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument(std::string("DeviceParams: ") + name + " must be >= 0");
    }
}

}  // namespace

DeviceParams DeviceParams::paper_defaults() { return DeviceParams{}; }

DeviceParams DeviceParams::noiseless() {
    DeviceParams p;
    const double inf = std::numeric_limits<double>::infinity();
    p.t1 = {inf};
    p.t2 = {inf};
    p.p_assign_1given0 = 0.0;
    p.p_assign_0given1 = 0.0;
    p.p_reset_excited = 0.0;
    p.epg_single = {0.0};
    p.epg_cnot = 0.0;
    p.gate_depolarizing_enabled = false;
    return p;
}

DeviceParams DeviceParams::uniform_coherence(double t, double latency, double p_assign, double p_reset) {
    DeviceParams p;
    p.t1 = {t};
    p.t2 = {t};
    p.meas_reset_latency = latency;
    p.p_assign_1given0 = p_assign;
    p.p_assign_0given1 = p_assign;
    p.p_reset_excited = p_reset;
    return p;
}

double DeviceParams::t1_of(unsigned qubit) const { return pick(t1, qubit, "t1"); }
double DeviceParams::t2_of(unsigned qubit) const { return pick(t2, qubit, "t2"); }
double DeviceParams::epg_single_of(unsigned qubit) const { return pick(epg_single, qubit, "epg_single"); }

void DeviceParams::validate() const {
    if (t1.empty() || t2.empty() || epg_single.empty()) {
        throw std::invalid_argument("DeviceParams: per-qubit vectors must be non-empty");
    }
    const std::size_t n = std::max(t1.size(), t2.size());
    for (unsigned q = 0; q < n; ++q) {
        const double a = t1_of(q);
        const double b = t2_of(q);
        if (!(a > 0.0) || !(b > 0.0)) {
            throw std::invalid_argument("DeviceParams: t1 and t2 must be positive");
        }
        if (b > 2.0 * a * (1.0 + 1e-12)) {
            throw std::invalid_argument("DeviceParams: t2 must not exceed 2*t1 (qubit " + std::to_string(q) + ")");
        }
    }
    check_duration(single_gate_len, "single_gate_len");
    check_duration(cnot_len, "cnot_len");
    check_duration(meas_reset_latency, "meas_reset_latency");
    check_duration(pointer_flip_delay, "pointer_flip_delay");
    check_probability(p_assign_1given0, "p_assign_1given0");
    check_probability(p_assign_0given1, "p_assign_0given1");
    check_probability(p_reset_excited, "p_reset_excited");
    check_probability(epg_cnot, "epg_cnot");
    for (double e : epg_single) {
        check_probability(e, "epg_single");
    }
}

}  // namespace dqc::noise
