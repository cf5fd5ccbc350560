#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dqc/simd/kernels.hpp"

namespace dqc::simd {

namespace {

bool cpu_has_avx2() {
#if defined(DQC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa from_environment(Isa fallback) {
    const char* env = std::getenv("DQC_SIMD");
    if (env == nullptr) {
        return fallback;
    }
    const std::string value(env);
    if (value == "scalar") {
        return Isa::Scalar;
    }
    if (value == "avx2" && cpu_has_avx2()) {
        return Isa::Avx2;
    }
    return fallback;
}

// -1 = auto, otherwise the Isa value.
std::atomic<int> g_override{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) { return isa == Isa::Scalar || (isa == Isa::Avx2 && cpu_has_avx2()); }

Isa detected_isa() {
    static const Isa detected = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return detected;
}

Isa active_isa() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) {
        return static_cast<Isa>(forced);
    }
    static const Isa from_env = from_environment(detected_isa());
    return from_env;
}

void set_isa(std::optional<Isa> isa) {
    if (!isa) {
        g_override.store(-1);
        return;
    }
    if (!isa_available(*isa)) {
        throw std::invalid_argument("SIMD variant not available on this CPU: " + std::string(isa_name(*isa)));
    }
    g_override.store(static_cast<int>(*isa));
}

#if defined(DQC_HAVE_AVX2_KERNELS)
#define DQC_DISPATCH(fn, ...)                \
    if (active_isa() == Isa::Avx2) {         \
        return avx2::fn(__VA_ARGS__);        \
    }                                        \
    return scalar::fn(__VA_ARGS__)
#else
#define DQC_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u) { DQC_DISPATCH(apply_1q, v, bit, u); }

void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u) {
    DQC_DISPATCH(apply_2q, v, hi_bit, lo_bit, u);
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) { DQC_DISPATCH(dot_re, a, b); }

void accumulate(std::span<cplx> y, std::span<const cplx> x) { DQC_DISPATCH(accumulate, y, x); }

#undef DQC_DISPATCH

#if !defined(DQC_HAVE_AVX2_KERNELS)
// Non-x86 builds keep the symbols so callers link; they are never dispatched to.
namespace avx2 {
void apply_1q(std::span<cplx> v, unsigned bit, const Mat2& u) { scalar::apply_1q(v, bit, u); }
void apply_2q(std::span<cplx> v, unsigned hi_bit, unsigned lo_bit, const Mat4& u) {
    scalar::apply_2q(v, hi_bit, lo_bit, u);
}
double dot_re(std::span<const cplx> a, std::span<const cplx> b) { return scalar::dot_re(a, b); }
void accumulate(std::span<cplx> y, std::span<const cplx> x) { scalar::accumulate(y, x); }
}  // namespace avx2
#endif

}  // namespace dqc::simd
