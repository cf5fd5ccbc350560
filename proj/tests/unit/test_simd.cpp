#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dqc/simd/kernels.hpp"

using dqc::simd::cplx;
namespace simd = dqc::simd;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& g) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {d(g), d(g)};
    return v;
}

template <std::size_t N>
std::array<cplx, N> random_matrix(std::mt19937_64& g) {
    std::normal_distribution<double> d;
    std::array<cplx, N> m;
    for (auto& x : m) x = {d(g), d(g)};
    return m;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

class Avx2Equivalence : public ::testing::Test {
protected:
    void SetUp() override {
        if (!simd::isa_available(simd::Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    }
    std::mt19937_64 g{7};
};

}  // namespace

TEST_F(Avx2Equivalence, Apply1qAllBits) {
    for (unsigned n : {1u, 2u, 3u, 6u, 10u}) {
        for (unsigned bit = 0; bit < n; ++bit) {
            auto v = random_vector(std::size_t{1} << n, g);
            auto w = v;
            const auto u = random_matrix<4>(g);
            simd::scalar::apply_1q(v, bit, u);
            simd::avx2::apply_1q(w, bit, u);
            EXPECT_LT(max_diff(v, w), 1e-12) << "n=" << n << " bit=" << bit;
        }
    }
}

TEST_F(Avx2Equivalence, Apply2qAllPairs) {
    for (unsigned n : {2u, 3u, 5u, 8u}) {
        for (unsigned hi = 0; hi < n; ++hi) {
            for (unsigned lo = 0; lo < n; ++lo) {
                if (hi == lo) continue;
                auto v = random_vector(std::size_t{1} << n, g);
                auto w = v;
                const auto u = random_matrix<16>(g);
                simd::scalar::apply_2q(v, hi, lo, u);
                simd::avx2::apply_2q(w, hi, lo, u);
                EXPECT_LT(max_diff(v, w), 1e-11) << "n=" << n << " hi=" << hi << " lo=" << lo;
            }
        }
    }
}

TEST_F(Avx2Equivalence, DotAndAccumulate) {
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
        const auto a = random_vector(n, g);
        const auto b = random_vector(n, g);
        EXPECT_NEAR(simd::scalar::dot_re(a, b), simd::avx2::dot_re(a, b), 1e-10 * (1.0 + n));
        auto y1 = a;
        auto y2 = a;
        simd::scalar::accumulate(y1, b);
        simd::avx2::accumulate(y2, b);
        EXPECT_LT(max_diff(y1, y2), 1e-14);
    }
}

TEST(SimdDispatch, PinAndRestore) {
    simd::set_isa(simd::Isa::Scalar);
    EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
    simd::set_isa(std::nullopt);
    EXPECT_EQ(simd::active_isa(), simd::detected_isa());
    EXPECT_EQ(simd::isa_name(simd::Isa::Scalar), "scalar");
}

TEST(SimdDispatch, DispatchedMatchesScalar) {
    std::mt19937_64 g(3);
    auto v = random_vector(32, g);
    auto w = v;
    const auto u = random_matrix<4>(g);
    simd::apply_1q(v, 2, u);
    simd::scalar::apply_1q(w, 2, u);
    EXPECT_LT(max_diff(v, w), 1e-12);
}

TEST(SimdScalar, HadamardOnBasisState) {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> v{1.0, 0.0, 0.0, 0.0};
    simd::scalar::apply_1q(v, 1, {s, s, s, -s});
    EXPECT_NEAR(v[0].real(), s, 1e-15);
    EXPECT_NEAR(v[2].real(), s, 1e-15);
    EXPECT_EQ(v[1], cplx{});
}
