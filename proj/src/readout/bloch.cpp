#include "dqc/readout/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqc::readout {

namespace {

constexpr int kStabilityGrid = 256;

// Field on t_j = j * spacing, j < n. Exponentials advance by recurrence,
// with one exact evaluation at the first point past the pulse edge.
std::vector<cplx> alpha_grid(const ReadoutModel& m, int state, std::size_t n, double spacing) {
    const cplx s(m.kappa / 2.0, m.delta_r + m.chi_of(state));
    const cplx step = std::exp(-spacing * s);
    const cplx amp = cplx(0.0, -m.epsilon) / s;
    std::vector<cplx> out(n);
    cplx e(1.0, 0.0);
    bool ringing = false;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) * spacing;
        if (t <= m.t_pulse) {
            out[j] = amp * (1.0 - e);
            e *= step;
        } else if (!ringing) {
            out[j] = resonator_alpha(t, state, m);
            ringing = true;
        } else {
            out[j] = out[j - 1] * step;
        }
    }
    return out;
}

struct LogRates {
    std::vector<cplx> f;  // d(ln z)/dt on the half-step grid
    double omega_max = 0.0;
};

LogRates log_rates(const ReadoutModel& m, std::size_t steps, double h) {
    const std::size_t n = 2 * steps + 1;
    const auto ag = alpha_grid(m, 0, n, h / 2);
    const auto ae = alpha_grid(m, 1, n, h / 2);
    const double dchi = m.chi_of(0) - m.chi_of(1);
    LogRates r;
    r.f.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx p = std::conj(ag[j]) * ae[j];
        const double omega = dchi * p.real();
        r.f[j] = cplx(-(m.gamma2 + dchi * p.imag()), omega);
        r.omega_max = std::max(r.omega_max, std::abs(omega));
    }
    return r;
}

std::size_t step_count(double t_end, double dt) {
    if (!(t_end >= 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("bloch_integrate: need t_end >= 0 and dt > 0");
    }
    return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

void check_stability(const ReadoutModel& model, double t_end, double dt, const LogRates& rates) {
    // The half-step grid is denser than the 256-point probe once it has more
    // points; otherwise probe explicitly.
    const double omega_max =
        rates.f.size() > kStabilityGrid ? rates.omega_max : 1.0 / (10.0 * bloch_max_step(model, t_end));
    if (dt > (1.0 + 1e-12) / (10.0 * std::max(model.kappa, omega_max))) {
        throw std::invalid_argument("bloch_integrate: step too large for stability");
    }
}

}  // namespace

double bloch_max_step(const ReadoutModel& model, double t_end) {
    double omega_max = 0.0;
    for (int i = 0; i <= kStabilityGrid; ++i) {
        omega_max = std::max(omega_max, std::abs(stark_and_dephasing(t_end * i / kStabilityGrid, model).omega));
    }
    return 1.0 / (10.0 * std::max(model.kappa, omega_max));
}

BlochTrace bloch_integrate(double x0, double y0, const ReadoutModel& model, double t_end, double dt) {
    model.validate();
    const std::size_t steps = step_count(t_end, dt);
    const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
    const LogRates rates = log_rates(model, steps, h);
    check_stability(model, t_end, dt, rates);

    BlochTrace out;
    out.t.reserve(steps + 1);
    out.x.reserve(steps + 1);
    out.y.reserve(steps + 1);
    cplx z(x0, y0);
    out.t.push_back(0.0);
    out.x.push_back(x0);
    out.y.push_back(y0);
    for (std::size_t i = 0; i < steps; ++i) {
        // RK4 on d(ln z)/dt = f(t): k2 = k3 since f does not depend on z.
        const cplx* f = rates.f.data() + 2 * i;
        z *= std::exp(h / 6.0 * (f[0] + 4.0 * f[1] + f[2]));
        out.t.push_back(h * static_cast<double>(i + 1));
        out.x.push_back(z.real());
        out.y.push_back(z.imag());
    }
    return out;
}

cplx bloch_endpoint(double x0, double y0, const ReadoutModel& model, double t_end, double dt) {
    model.validate();
    const std::size_t steps = step_count(t_end, dt);
    const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
    const LogRates rates = log_rates(model, steps, h);
    check_stability(model, t_end, dt, rates);
    cplx acc{};
    for (std::size_t i = 0; i < steps; ++i) {
        const cplx* f = rates.f.data() + 2 * i;
        acc += f[0] + 4.0 * f[1] + f[2];
    }
    return cplx(x0, y0) * std::exp(h / 6.0 * acc);
}

}  // namespace dqc::readout
