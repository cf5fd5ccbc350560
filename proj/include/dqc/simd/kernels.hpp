#pragma once

// Data-parallel inner loops shared by the simulator and the readout code.
//
// Every kernel has a scalar reference implementation in `dqc::simd::scalar`
// and, where the target supports it, a vectorized variant (`dqc::simd::avx2`).
// The unqualified entry points dispatch at runtime to the best variant the
// CPU supports; `set_isa` pins a variant for equivalence testing.
//
// Vectors of complex amplitudes are addressed by bit position: a "1q" kernel
// mixes the pairs (i, i | 1<<bit) for every i with that bit clear, a "2q"
// kernel mixes the quartets spanned by two distinct bits.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace dqc::simd {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;
/// Row-major 4x4 complex matrix. Row/column index = 2*b(hi_bit) + b(lo_bit).
using Mat4 = std::array<cplx, 16>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best variant supported by the running CPU and this build.
Isa detected_isa();

/// Variant used by the dispatching entry points. Honors `set_isa` and the
/// DQC_SIMD environment variable ("scalar" or "avx2").
Isa active_isa();

/// Pins the dispatch target; std::nullopt restores auto-detection.
/// Throws std::invalid_argument if the variant is unavailable.
void set_isa(std::optional<Isa> isa);

bool isa_available(Isa isa);

// v[i, i|bit] <- u * v[i, i|bit]
void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u);
// quartet update on (hi_bit, lo_bit); the bits must differ.
void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u);
// Re(sum_i a_i * conj(b_i))
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
// y += x
void accumulate(std::span<cplx> y, std::span<const cplx> x);

namespace scalar {
void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u);
void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u);
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
void accumulate(std::span<cplx> y, std::span<const cplx> x);
}  // namespace scalar

namespace avx2 {
void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u);
void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u);
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
void accumulate(std::span<cplx> y, std::span<const cplx> x);
}  // namespace avx2

}  // namespace dqc::simd
