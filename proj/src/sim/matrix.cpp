#include "dqc/sim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqc::sim {

Matrix::Matrix(std::size_t dim, std::initializer_list<cplx> values) : dim_(dim), data_(values) {
    if (data_.size() != dim * dim) {
        throw std::invalid_argument("Matrix: initializer size does not match dimension");
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Matrix Matrix::conj() const {
    Matrix out(dim_);
    std::transform(data_.begin(), data_.end(), out.data_.begin(), [](cplx z) { return std::conj(z); });
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("Matrix product: dimension mismatch");
    }
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cplx a = (*this)(r, k);
            if (a == cplx{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; ++c) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("Matrix sum: dimension mismatch");
    }
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] += rhs.data_[i];
    }
    return out;
}

Matrix Matrix::operator*(cplx scale) const {
    Matrix out(*this);
    for (auto& z : out.data_) {
        z *= scale;
    }
    return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Matrix compare: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

double Matrix::unitarity_error() const { return (adjoint() * (*this)).max_abs_diff(identity(dim_)); }

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    Matrix out(da * db);
    for (std::size_t ar = 0; ar < da; ++ar) {
        for (std::size_t ac = 0; ac < da; ++ac) {
            for (std::size_t br = 0; br < db; ++br) {
                for (std::size_t bc = 0; bc < db; ++bc) {
                    out(ar * db + br, ac * db + bc) = a(ar, ac) * b(br, bc);
                }
            }
        }
    }
    return out;
}

double completeness_error(const KrausSet& kraus) {
    if (kraus.empty()) {
        return 1.0;
    }
    const std::size_t dim = kraus.front().dim();
    Matrix sum(dim);
    for (const auto& k : kraus) {
        if (k.dim() != dim) {
            throw std::invalid_argument("Kraus set: mixed dimensions");
        }
        sum = sum + k.adjoint() * k;
    }
    return sum.max_abs_diff(Matrix::identity(dim));
}

}  // namespace dqc::sim
