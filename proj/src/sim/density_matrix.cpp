#include "dqc/sim/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dqc/simd/kernels.hpp"

namespace dqc::sim {

namespace {

void check_qubit_count(unsigned n) {
    if (n < 1 || n > DensityMatrix::kMaxQubits) {
        throw std::invalid_argument("DensityMatrix: qubit count must be in [1, 8], got " + std::to_string(n));
    }
}

void check_targets(const DensityMatrix& state, std::span<const unsigned> targets, std::size_t payload_dim) {
    if (targets.empty() || targets.size() > 2) {
        throw std::invalid_argument("operation supports one or two target qubits");
    }
    if (payload_dim != (std::size_t{1} << targets.size())) {
        throw std::invalid_argument("payload dimension does not match target count");
    }
    for (unsigned t : targets) {
        if (t >= state.n_qubits()) {
            throw std::invalid_argument("target qubit out of range: " + std::to_string(t));
        }
    }
    if (targets.size() == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("target qubits must be distinct");
    }
}

simd::Mat2 to_mat2(const Matrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

simd::Mat4 to_mat4(const Matrix& m) {
    simd::Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[4 * r + c] = m(r, c);
        }
    }
    return out;
}

// Left-multiply on the row index and right-multiply by the adjoint on the
// column index: rho <- K rho K^dagger, no completeness check.
void conjugate_in_place(std::span<cplx> flat, unsigned n, const Matrix& k, std::span<const unsigned> targets) {
    if (targets.size() == 1) {
        const unsigned q = targets[0];
        simd::apply_2q(flat, q + n, q, to_mat4(kron(k, k.conj())));
        return;
    }
    simd::apply_2q(flat, targets[0] + n, targets[1] + n, to_mat4(k));
    simd::apply_2q(flat, targets[0], targets[1], to_mat4(k.conj()));
}

}  // namespace

DensityMatrix::DensityMatrix(unsigned n_qubits) : n_(n_qubits) {
    check_qubit_count(n_qubits);
    data_.assign(std::size_t{1} << (2 * n_), cplx{});
    data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_matrix(unsigned n_qubits, std::vector<cplx> data, double tol) {
    DensityMatrix out(n_qubits);
    if (data.size() != out.data_.size()) {
        throw std::invalid_argument("DensityMatrix::from_matrix: expected 4^n entries");
    }
    out.data_ = std::move(data);
    out.validate(tol);
    return out;
}

DensityMatrix DensityMatrix::from_pure(std::span<const cplx> amplitudes) {
    const std::size_t dim = amplitudes.size();
    unsigned n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim) {
        throw std::invalid_argument("DensityMatrix::from_pure: length must be a power of two");
    }
    DensityMatrix out(n);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out.data_[(r << n) | c] = amplitudes[r] * std::conj(amplitudes[c]);
        }
    }
    out.validate(1e-9);
    return out;
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        t += data_[(i << n_) | i].real();
    }
    return t;
}

double DensityMatrix::population(unsigned qubit, int bit) const {
    if (qubit >= n_) {
        throw std::invalid_argument("population: qubit out of range");
    }
    double p = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (static_cast<int>((i >> qubit) & 1U) == bit) {
            p += data_[(i << n_) | i].real();
        }
    }
    return p;
}

Matrix DensityMatrix::reduced(unsigned qubit) const {
    if (qubit >= n_) {
        throw std::invalid_argument("reduced: qubit out of range");
    }
    Matrix out(2);
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            if ((r & ~mask) != (c & ~mask)) {
                continue;
            }
            out((r & mask) ? 1 : 0, (c & mask) ? 1 : 0) += data_[(r << n_) | c];
        }
    }
    return out;
}

InvariantReport DensityMatrix::check_invariants() const {
    InvariantReport report;
    report.trace_error = std::abs(trace() - 1.0);
    const std::size_t d = dim();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const cplx v = (*this)(r, c);
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
            report.hermiticity_error = std::max(report.hermiticity_error, std::abs(v - std::conj((*this)(c, r))));
        }
    }
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    return report;
}

void DensityMatrix::validate(double tol) const {
    const InvariantReport r = check_invariants();
    if (!r.ok(tol)) {
        std::ostringstream msg;
        msg << "density matrix invariant violated: trace error " << r.trace_error << ", hermiticity error "
            << r.hermiticity_error << ", min eigenvalue " << r.min_eigenvalue;
        throw std::runtime_error(msg.str());
    }
}

void apply_unitary(DensityMatrix& state, const Matrix& u, std::span<const unsigned> targets) {
    check_targets(state, targets, u.dim());
    if (u.unitarity_error() > 1e-6) {
        throw std::invalid_argument("apply_unitary: payload is not unitary");
    }
    const unsigned n = state.n_qubits();
    auto flat = state.mutable_data();
    if (targets.size() == 1) {
        const unsigned q = targets[0];
        simd::apply_1q(flat, q + n, to_mat2(u));
        simd::apply_1q(flat, q, to_mat2(u.conj()));
        return;
    }
    simd::apply_2q(flat, targets[0] + n, targets[1] + n, to_mat4(u));
    simd::apply_2q(flat, targets[0], targets[1], to_mat4(u.conj()));
}

void apply_kraus(DensityMatrix& state, const KrausSet& kraus, std::span<const unsigned> targets) {
    if (kraus.empty()) {
        throw std::invalid_argument("apply_kraus: empty Kraus set");
    }
    check_targets(state, targets, kraus.front().dim());
    if (completeness_error(kraus) > 1e-6) {
        throw std::invalid_argument("apply_kraus: Kraus set is not trace preserving");
    }
    const unsigned n = state.n_qubits();
    auto flat = state.mutable_data();
    if (targets.size() == 1) {
        // Single-qubit channels collapse to one 4x4 superoperator pass over
        // the (row bit, column bit) pair.
        Matrix super(4);
        for (const auto& k : kraus) {
            super = super + kron(k, k.conj());
        }
        simd::apply_2q(flat, targets[0] + n, targets[0], to_mat4(super));
        return;
    }
    std::vector<cplx> acc(flat.size());
    std::vector<cplx> term(flat.size());
    for (const auto& k : kraus) {
        std::copy(flat.begin(), flat.end(), term.begin());
        conjugate_in_place(term, n, k, targets);
        simd::accumulate(acc, term);
    }
    std::copy(acc.begin(), acc.end(), flat.begin());
}

double project(DensityMatrix& state, unsigned qubit, int bit) {
    const double p = state.population(qubit, bit);
    if (p < 1e-15) {
        return 0.0;
    }
    const unsigned n = state.n_qubits();
    const std::size_t dim = state.dim();
    auto flat = state.mutable_data();
    const double inv = 1.0 / p;
    for (std::size_t r = 0; r < dim; ++r) {
        const bool row_ok = static_cast<int>((r >> qubit) & 1U) == bit;
        for (std::size_t c = 0; c < dim; ++c) {
            const bool col_ok = static_cast<int>((c >> qubit) & 1U) == bit;
            cplx& v = flat[(r << n) | c];
            v = (row_ok && col_ok) ? v * inv : cplx{};
        }
    }
    return p;
}

MeasureOutcome measure(DensityMatrix& state, unsigned qubit, Rng& rng) {
    if (qubit >= state.n_qubits()) {
        throw std::invalid_argument("measure: qubit out of range");
    }
    const double p0 = std::max(0.0, state.population(qubit, 0));
    const double p1 = std::max(0.0, state.population(qubit, 1));
    if (p0 < 1e-12 && p1 < 1e-12) {
        throw std::runtime_error("measure: both outcome probabilities underflow; state is corrupted");
    }
    const double u = rng.uniform();
    const int bit = (u < p0 / (p0 + p1)) ? 0 : 1;
    const double p = project(state, qubit, bit);
    return {bit, p};
}

}  // namespace dqc::sim
