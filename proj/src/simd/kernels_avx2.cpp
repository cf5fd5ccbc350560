// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher confirmed CPU support.

#include <immintrin.h>

#include <stdexcept>

#include "dqc/simd/kernels.hpp"

namespace dqc::simd::avx2 {

namespace {

inline std::size_t insert_zero(std::size_t i, unsigned bit) {
    const std::size_t low = i & ((std::size_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d x) { _mm256_storeu_pd(reinterpret_cast<double*>(p), x); }

inline __m256d splat(cplx c) { return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag()); }
inline __m256d pair(cplx a, cplx b) { return _mm256_setr_pd(a.real(), a.imag(), b.real(), b.imag()); }

// Lane-wise complex product of two packed pairs.
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d low_lane(__m256d x) { return _mm256_permute2f128_pd(x, x, 0x00); }
inline __m256d high_lane(__m256d x) { return _mm256_permute2f128_pd(x, x, 0x11); }

}  // namespace

void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u) {
    const std::size_t half = v.size() / 2;
    if (half == 0) {
        return;
    }
    if (bit == 0) {
        const __m256d col0 = pair(u[0], u[2]);
        const __m256d col1 = pair(u[1], u[3]);
        for (std::size_t i = 0; i < half; ++i) {
            cplx* p = v.data() + 2 * i;
            const __m256d x = load2(p);
            store2(p, _mm256_add_pd(cmul(low_lane(x), col0), cmul(high_lane(x), col1)));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << bit;
    const __m256d u00 = splat(u[0]), u01 = splat(u[1]), u10 = splat(u[2]), u11 = splat(u[3]);
    for (std::size_t i = 0; i < half; i += 2) {
        cplx* p0 = v.data() + insert_zero(i, bit);
        cplx* p1 = p0 + stride;
        const __m256d a = load2(p0);
        const __m256d b = load2(p1);
        store2(p0, _mm256_add_pd(cmul(a, u00), cmul(b, u01)));
        store2(p1, _mm256_add_pd(cmul(a, u10), cmul(b, u11)));
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

    if (b_small == 0) {
        // One amplitude pair per load lies along bit 0. Rows held by the pair
        // at `base` are (a0, a1); the pair at base|other holds (b0, b1).
        const bool lo_is_zero = (lo_bit == 0);
        const std::size_t other = lo_is_zero ? hi : lo;
        const std::array<int, 2> ra = lo_is_zero ? std::array<int, 2>{0, 1} : std::array<int, 2>{0, 2};
        const std::array<int, 2> rb = lo_is_zero ? std::array<int, 2>{2, 3} : std::array<int, 2>{1, 3};
        const std::array<int, 4> col_of_input{ra[0], ra[1], rb[0], rb[1]};
        __m256d out_a[4], out_b[4];
        for (int k = 0; k < 4; ++k) {
            const int c = col_of_input[k];
            out_a[k] = pair(u[4 * ra[0] + c], u[4 * ra[1] + c]);
            out_b[k] = pair(u[4 * rb[0] + c], u[4 * rb[1] + c]);
        }
        for (std::size_t i = 0; i < quarter; ++i) {
            const std::size_t base = insert_zero(insert_zero(i, b_small), b_large);
            cplx* pa = v.data() + base;
            cplx* pb = v.data() + (base | other);
            const __m256d wa = load2(pa);
            const __m256d wb = load2(pb);
            const __m256d in[4] = {low_lane(wa), high_lane(wa), low_lane(wb), high_lane(wb)};
            __m256d acc_a = cmul(in[0], out_a[0]);
            __m256d acc_b = cmul(in[0], out_b[0]);
            for (int k = 1; k < 4; ++k) {
                acc_a = _mm256_add_pd(acc_a, cmul(in[k], out_a[k]));
                acc_b = _mm256_add_pd(acc_b, cmul(in[k], out_b[k]));
            }
            store2(pa, acc_a);
            store2(pb, acc_b);
        }
        return;
    }

    __m256d m[16];
    for (std::size_t k = 0; k < 16; ++k) {
        m[k] = splat(u[k]);
    }
    for (std::size_t i = 0; i < quarter; i += 2) {
        const std::size_t base = insert_zero(insert_zero(i, b_small), b_large);
        const std::array<cplx*, 4> p{v.data() + base, v.data() + (base | lo), v.data() + (base | hi),
                                     v.data() + (base | hi | lo)};
        const __m256d in[4] = {load2(p[0]), load2(p[1]), load2(p[2]), load2(p[3])};
        for (std::size_t r = 0; r < 4; ++r) {
            __m256d acc = cmul(in[0], m[4 * r]);
            acc = _mm256_add_pd(acc, cmul(in[1], m[4 * r + 1]));
            acc = _mm256_add_pd(acc, cmul(in[2], m[4 * r + 2]));
            acc = _mm256_add_pd(acc, cmul(in[3], m[4 * r + 3]));
            store2(p[r], acc);
        }
    }
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot_re: length mismatch");
    }
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    const std::size_t n = 2 * a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        total += pa[i] * pb[i];
    }
    return total;
}

void accumulate(std::span<cplx> y, std::span<const cplx> x) {
    if (y.size() != x.size()) {
        throw std::invalid_argument("accumulate: length mismatch");
    }
    double* py = reinterpret_cast<double*>(y.data());
    const double* px = reinterpret_cast<const double*>(x.data());
    const std::size_t n = 2 * y.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(py + i, _mm256_add_pd(_mm256_loadu_pd(py + i), _mm256_loadu_pd(px + i)));
    }
    for (; i < n; ++i) {
        py[i] += px[i];
    }
}

}  // namespace dqc::simd::avx2
