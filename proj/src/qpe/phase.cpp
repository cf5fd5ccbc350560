#include "dqc/qpe/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace dqc::qpe {

double wrap01(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

PhaseFraction PhaseFraction::from_bits(std::span<const int> bits) {
    PhaseFraction out;
    double scale = 0.5;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("PhaseFraction: bits must be 0 or 1");
        }
        out.value += b * scale;
        out.bits.push_back(b);
        scale *= 0.5;
    }
    return out;
}

PhaseFraction PhaseFraction::from_value(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("PhaseFraction: non-finite value");
    }
    return {wrap01(value), {}};
}

PhaseFraction PhaseFraction::from_code(std::uint64_t code, unsigned m) {
    if (m == 0 || m > 62 || code >= (std::uint64_t{1} << m)) {
        throw std::invalid_argument("PhaseFraction: code out of range");
    }
    std::vector<int> bits(m);
    for (unsigned j = 0; j < m; ++j) {
        bits[j] = static_cast<int>((code >> (m - 1 - j)) & 1U);
    }
    return from_bits(bits);
}

double circular_error(double estimate, double truth) {
    const double d = std::abs(wrap01(estimate) - wrap01(truth));
    return std::min(d, 1.0 - d);
}

std::string to_string(Protocol p) { return p == Protocol::Ipe ? "ipe" : "kitaev"; }

Protocol parse_protocol(const std::string& name) {
    if (name == "ipe") {
        return Protocol::Ipe;
    }
    if (name == "kitaev") {
        return Protocol::Kitaev;
    }
    throw std::invalid_argument("unknown protocol: " + name);
}

long allocate_shots(const ResourceBudget& budget, Protocol protocol) {
    if (budget.total <= 0 || budget.bits <= 0) {
        throw std::invalid_argument("allocate_shots: R and m must be positive");
    }
    const long per = protocol == Protocol::Ipe ? budget.total / budget.bits : budget.total / (2L * budget.bits);
    if (per < 1) {
        throw std::invalid_argument("allocate_shots: budget R=" + std::to_string(budget.total) +
                                    " too small for m=" + std::to_string(budget.bits) + " with " +
                                    to_string(protocol));
    }
    return per;
}

long long hoeffding_samples(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("hoeffding_samples: need 0 < epsilon, delta < 1");
    }
    const double s = std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
    // Shave rounding noise so exact integers are not bumped up by one.
    return static_cast<long long>(std::ceil(s * (1.0 - 1e-12)));
}

}  // namespace dqc::qpe
