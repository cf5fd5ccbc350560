#pragma once

#include <span>
#include <vector>

#include "dqc/sim/matrix.hpp"
#include "dqc/sim/rng.hpp"

namespace dqc::sim {

/// Deviations of a state from the density-matrix axioms.
struct InvariantReport {
    double trace_error = 0.0;        // |tr(rho) - 1|
    double hermiticity_error = 0.0;  // max |rho_ij - conj(rho_ji)|
    double min_eigenvalue = 0.0;

    bool ok(double tol = 1e-9) const {
        return trace_error <= tol && hermiticity_error <= tol && min_eigenvalue >= -tol;
    }
};

/// Exact mixed state of 1..8 qubits.
///
/// Storage is the row-major 2^n x 2^n matrix viewed as a flat vector of
/// length 4^n: flat index = (row << n) | column. Qubit q is bit q of both the
/// row and the column, so it occupies flat bits q (column) and q + n (row).
class DensityMatrix {
public:
    static constexpr unsigned kMaxQubits = 8;

    /// |0...0><0...0|
    explicit DensityMatrix(unsigned n_qubits);

    /// Takes ownership of a row-major matrix after validating its invariants.
    static DensityMatrix from_matrix(unsigned n_qubits, std::vector<cplx> data, double tol = 1e-9);
    /// |psi><psi| for a normalized amplitude vector of length 2^n.
    static DensityMatrix from_pure(std::span<const cplx> amplitudes);

    unsigned n_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }

    cplx operator()(std::size_t r, std::size_t c) const { return data_[(r << n_) | c]; }
    std::span<const cplx> data() const { return data_; }
    std::span<cplx> mutable_data() { return data_; }

    double trace() const;
    /// P(qubit reads `bit`) in the computational basis.
    double population(unsigned qubit, int bit) const;
    /// 2x2 reduced state of one qubit, row-major.
    Matrix reduced(unsigned qubit) const;

    InvariantReport check_invariants() const;
    /// Throws std::runtime_error when any invariant is violated beyond `tol`.
    void validate(double tol = 1e-9) const;

private:
    unsigned n_;
    std::vector<cplx> data_;
};

/// rho <- U rho U^dagger. `targets[0]` is the most significant index of U.
/// Throws std::invalid_argument for bad targets, a dimension mismatch or a
/// payload with |U^dagger U - I| > 1e-6.
void apply_unitary(DensityMatrix& state, const Matrix& u, std::span<const unsigned> targets);

/// rho <- sum_k K rho K^dagger on one or two target qubits.
/// Throws std::invalid_argument when |sum K^dagger K - I| > 1e-6.
void apply_kraus(DensityMatrix& state, const KrausSet& kraus, std::span<const unsigned> targets);

struct MeasureOutcome {
    int bit = 0;
    double probability = 0.0;
};

/// Born-rule draw followed by projective collapse. Consumes exactly one
/// uniform draw. Throws std::runtime_error if both branch probabilities are
/// below 1e-12 (corrupted state).
MeasureOutcome measure(DensityMatrix& state, unsigned qubit, Rng& rng);

/// Collapses onto `bit` without sampling; returns the branch probability.
/// The state is left unnormalized-safe: if the probability is below 1e-15
/// the state is untouched and 0 is returned.
double project(DensityMatrix& state, unsigned qubit, int bit);

}  // namespace dqc::sim
