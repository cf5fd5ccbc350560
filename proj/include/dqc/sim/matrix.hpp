#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dqc::sim {

using cplx = std::complex<double>;

/// Small dense square complex matrix, row-major. Used for gate payloads and
/// Kraus operators (dimension 2 or 4 in practice).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Matrix(std::size_t dim, std::initializer_list<cplx> values);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    const std::vector<cplx>& data() const { return data_; }

    Matrix adjoint() const;
    Matrix conj() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator*(cplx scale) const;

    /// Max elementwise |a - b|.
    double max_abs_diff(const Matrix& other) const;
    /// Max elementwise |U^dagger U - I|.
    double unitarity_error() const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// a (x) b, with `a` acting on the more significant index.
Matrix kron(const Matrix& a, const Matrix& b);

using KrausSet = std::vector<Matrix>;

/// Max elementwise |sum K^dagger K - I|.
double completeness_error(const KrausSet& kraus);

}  // namespace dqc::sim
