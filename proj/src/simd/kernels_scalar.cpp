#include "dqc/simd/kernels.hpp"

#include <stdexcept>

namespace dqc::simd::scalar {

namespace {

// Inserts a zero at position `bit` of `i`.
inline std::size_t insert_zero(std::size_t i, unsigned bit) {
    const std::size_t low = i & ((std::size_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

}  // namespace

void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u) {
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t half = v.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = insert_zero(i, bit);
        const std::size_t i1 = i0 | stride;
        const cplx a = v[i0];
        const cplx b = v[i1];
        v[i0] = u[0] * a + u[1] * b;
        v[i1] = u[2] * a + u[3] * b;
    }
}

void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u) {
    if (hi_bit == lo_bit) {
        throw std::invalid_argument("apply_2q: bits must differ");
    }
    const unsigned b_small = hi_bit < lo_bit ? hi_bit : lo_bit;
    const unsigned b_large = hi_bit < lo_bit ? lo_bit : hi_bit;
    const std::size_t hi = std::size_t{1} << hi_bit;
    const std::size_t lo = std::size_t{1} << lo_bit;
    const std::size_t quarter = v.size() / 4;
    for (std::size_t i = 0; i < quarter; ++i) {
        const std::size_t base = insert_zero(insert_zero(i, b_small), b_large);
        const std::array<std::size_t, 4> idx{base, base | lo, base | hi, base | hi | lo};
        const std::array<cplx, 4> in{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            v[idx[r]] = u[4 * r] * in[0] + u[4 * r + 1] * in[1] + u[4 * r + 2] * in[2] +
                        u[4 * r + 3] * in[3];
        }
    }
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot_re: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    return acc;
}

void accumulate(std::span<cplx> y, std::span<const cplx> x) {
    if (y.size() != x.size()) {
        throw std::invalid_argument("accumulate: length mismatch");
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += x[i];
    }
}

}  // namespace dqc::simd::scalar
