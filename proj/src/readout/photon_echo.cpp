#include "dqc/readout/photon_echo.hpp"

#include <gsl/gsl_blas.h>
#include <gsl/gsl_multifit_nlinear.h>

#include <cmath>
#include <stdexcept>

namespace dqc::readout {

double echo_signal(double t, double alpha_c, double n0, double chi, double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("echo_signal: kappa must be positive");
    }
    const double denom = kappa * kappa + 4.0 * chi * chi;
    const double beta = 4.0 * chi * chi / denom;
    const double n = n0 * std::exp(-kappa * t);
    return 0.5 * (1.0 - alpha_c * std::exp(-beta * n) * std::cos(n * kappa * 2.0 * chi / denom));
}

double echo_signal(double t, const ReadoutModel& model) {
    return echo_signal(t, std::exp(-model.gamma2 * model.t_ramsey), model.n0, model.chi, model.kappa);
}

bool echo_regime_ok(const ReadoutModel& model) { return model.kappa * model.t_ramsey >= 5.0; }

namespace {

struct EchoData {
    std::span<const double> t;
    std::span<const double> y;
    double chi;
    double kappa;
};

int echo_residuals(const gsl_vector* p, void* params, gsl_vector* f) {
    const auto* d = static_cast<const EchoData*>(params);
    const double a = gsl_vector_get(p, 0);
    const double n0 = gsl_vector_get(p, 1);
    for (std::size_t i = 0; i < d->t.size(); ++i) {
        gsl_vector_set(f, i, echo_signal(d->t[i], a, n0, d->chi, d->kappa) - d->y[i]);
    }
    return GSL_SUCCESS;
}

}  // namespace

EchoFit fit_photon_number(std::span<const double> t, std::span<const double> signal, const ReadoutModel& model,
                          double alpha_c_guess, double n0_guess) {
    if (t.size() != signal.size() || t.size() < 3) {
        throw std::invalid_argument("fit_photon_number: need >= 3 matching samples");
    }
    model.validate();
    EchoFit out;
    if (!echo_regime_ok(model)) {
        out.warnings.push_back("kappa * t_ramsey < 5: echo closed form outside its regime");
    }

    EchoData data{t, signal, model.chi, model.kappa};
    gsl_multifit_nlinear_fdf fdf;
    fdf.f = &echo_residuals;
    fdf.df = nullptr;  // finite-difference Jacobian
    fdf.fvv = nullptr;
    fdf.n = t.size();
    fdf.p = 2;
    fdf.params = &data;

    gsl_multifit_nlinear_parameters params = gsl_multifit_nlinear_default_parameters();
    gsl_multifit_nlinear_workspace* w =
        gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &params, fdf.n, fdf.p);
    gsl_vector* x0 = gsl_vector_alloc(2);
    gsl_vector_set(x0, 0, alpha_c_guess);
    gsl_vector_set(x0, 1, n0_guess);
    gsl_multifit_nlinear_init(x0, &fdf, w);

    int info = 0;
    const int status = gsl_multifit_nlinear_driver(500, 1e-14, 1e-14, 1e-14, nullptr, nullptr, &info, w);
    out.converged = (status == GSL_SUCCESS);
    if (!out.converged) {
        out.warnings.push_back("echo fit did not converge");
    }

    const gsl_vector* x = gsl_multifit_nlinear_position(w);
    out.alpha_c = gsl_vector_get(x, 0);
    out.n0 = gsl_vector_get(x, 1);
    double chisq = 0.0;
    gsl_blas_ddot(gsl_multifit_nlinear_residual(w), gsl_multifit_nlinear_residual(w), &chisq);
    out.residual = chisq;

    gsl_matrix* covar = gsl_matrix_alloc(2, 2);
    gsl_multifit_nlinear_covar(gsl_multifit_nlinear_jac(w), 0.0, covar);
    const double dof = static_cast<double>(t.size()) - 2.0;
    const double s2 = dof > 0 ? chisq / dof : 0.0;
    out.alpha_c_stderr = std::sqrt(std::max(0.0, gsl_matrix_get(covar, 0, 0) * s2));
    out.n0_stderr = std::sqrt(std::max(0.0, gsl_matrix_get(covar, 1, 1) * s2));
    gsl_matrix_free(covar);
    gsl_vector_free(x0);
    gsl_multifit_nlinear_free(w);

    out.correction = std::exp(model.kappa * model.t_gate);
    out.n0_corrected = out.n0 * out.correction;
    const double beta = 4.0 * model.chi * model.chi / (model.kappa * model.kappa + 4.0 * model.chi * model.chi);
    out.distinguishability = 4.0 * beta * out.n0;
    return out;
}

double n_crit(double anharmonicity, double detuning, double chi) {
    if (chi == 0.0) {
        throw std::invalid_argument("n_crit: chi = 0 (dispersive regime unbounded)");
    }
    if (detuning + anharmonicity == 0.0) {
        throw std::invalid_argument("n_crit: detuning + anharmonicity = 0");
    }
    return std::abs(anharmonicity * detuning / (4.0 * chi * (detuning + anharmonicity)));
}

double hellinger_sq(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) {
        throw std::invalid_argument("hellinger_sq: distributions must have equal, nonzero length");
    }
    double sp = 0.0, sq = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) {
            throw std::invalid_argument("hellinger_sq: negative probability");
        }
        sp += p[i];
        sq += q[i];
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        acc += d * d;
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
        throw std::invalid_argument("hellinger_sq: distributions must sum to 1");
    }
    return std::min(1.0, 0.5 * acc);
}

}  // namespace dqc::readout
