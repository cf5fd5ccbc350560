#include "dqc/readout/simplex.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace dqc::readout {

namespace {

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

double trampoline(const gsl_vector* x, void* params) {
    const auto* f = static_cast<const Objective*>(params);
    const double v = (*f)(std::span<const double>(x->data, x->size));
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

}  // namespace

SimplexResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options) {
    if (x0.empty()) {
        throw std::invalid_argument("minimize_simplex: empty start point");
    }
    const std::size_t n = x0.size();
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
    std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, x0[i]);
        gsl_vector_set(step.get(), i, options.initial_step);
    }
    gsl_multimin_function fn;
    fn.n = n;
    fn.f = &trampoline;
    fn.params = const_cast<Objective*>(&f);

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
    gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());

    SimplexResult out;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && out.iterations < options.max_iterations) {
        ++out.iterations;
        if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) {
            break;
        }
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), options.size_tol);
    }
    out.converged = (status == GSL_SUCCESS);
    out.value = s->fval;
    out.x.assign(s->x->data, s->x->data + n);
    return out;
}

SimplexResult minimize_multistart(const Objective& f, const std::vector<std::vector<double>>& starts,
                                  const SimplexOptions& options) {
    if (starts.empty()) {
        throw std::invalid_argument("minimize_multistart: no start points");
    }
    SimplexResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
        SimplexResult r = minimize_simplex(f, x0, options);
        if (r.value < best.value) {
            best = std::move(r);
        }
    }
    // Nelder-Mead can stall on a collapsed simplex; a fresh one usually moves.
    SimplexOptions polish = options;
    polish.initial_step = options.initial_step / 10.0;
    for (int round = 0; round < 5; ++round) {
        SimplexResult r = minimize_simplex(f, best.x, polish);
        const bool improved = r.value < best.value * (1.0 - 1e-12);
        if (r.value <= best.value) {
            r.iterations += best.iterations;
            best = std::move(r);
        }
        if (!improved) {
            break;
        }
    }
    return best;
}

}  // namespace dqc::readout
