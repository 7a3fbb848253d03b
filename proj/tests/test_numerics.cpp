#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "zczseq/numerics.hpp"
#include "zczseq/random.hpp"

using namespace zczseq;

namespace {

void expect_seq_near(const ComplexSeq& got, const std::vector<Complex>& want, double tol = 1e-12) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
        EXPECT_NEAR(std::abs(got[k] - want[k]), 0.0, tol) << "index " << k;
    }
}

ComplexSeq random_seq(std::size_t n, Rng& rng) {
    std::vector<Complex> v(n);
    for (auto& z : v) {
        z = {2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
    }
    return ComplexSeq(std::move(v));
}

} // namespace

TEST(ComplexSeq, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(ComplexSeq(std::vector<Complex>{}), ValidationError);
    EXPECT_THROW((ComplexSeq{Complex{1.0, std::numeric_limits<double>::quiet_NaN()}}), ValidationError);
    EXPECT_THROW((ComplexSeq{Complex{std::numeric_limits<double>::infinity(), 0.0}}), ValidationError);
}

TEST(PhaseExponent, ReducesNumerator) {
    EXPECT_EQ(PhaseExponent(6, 4).numerator(), 2);
    EXPECT_EQ(PhaseExponent(-1, 4).numerator(), 3);
    EXPECT_THROW(PhaseExponent(1, 0), ValidationError);
}

TEST(UnitRoot, Examples) {
    EXPECT_EQ(unit_root(1, 4), Complex(0.0, -1.0));
    EXPECT_EQ(unit_root(6, 4), Complex(-1.0, 0.0));
    for (std::int64_t k = 1; k < 20; ++k) {
        EXPECT_EQ(unit_root(0, k), Complex(1.0, 0.0));
    }
    EXPECT_NEAR(std::abs(unit_root(1, 3) - oracle::w(3, 1)), 0.0, 1e-15);
}

TEST(UnitRoot, ExponentAdditivity) {
    for (std::int64_t m = 1; m <= 40; ++m) {
        for (std::int64_t a = -m; a < 2 * m; a += 3) {
            for (std::int64_t b = -m; b < 2 * m; b += 5) {
                const Complex lhs = unit_root(mod_floor(a + b, m), m);
                const Complex rhs = unit_root(a, m) * unit_root(b, m);
                ASSERT_LT(std::abs(lhs - rhs), 1e-14) << a << " + " << b << " mod " << m;
            }
        }
    }
}

TEST(DftClassic, Examples) {
    expect_seq_near(dft_classic({1, 0, 0, 0}), {1, 1, 1, 1});
    expect_seq_near(dft_classic({1, 1, 1, 1}), {4, 0, 0, 0});
    expect_seq_near(dft_classic({1, -1}), {0, 2});
}

TEST(IdftClassic, Examples) {
    expect_seq_near(idft_classic({4, 0, 0, 0}), {1, 1, 1, 1});
    expect_seq_near(idft_classic({0, 2}), {1, -1});
    expect_seq_near(idft_classic({1}), {1});
}

TEST(DftUnitary, Examples) {
    expect_seq_near(dft_unitary({1, 0, 0, 0}), {0.5, 0.5, 0.5, 0.5});
    expect_seq_near(dft_unitary({1, 1}), {std::sqrt(2.0), 0});
    const ComplexSeq x{Complex{3, 0}, Complex{0, 4}};
    EXPECT_DOUBLE_EQ(energy(x), 25.0);
    EXPECT_NEAR(energy(dft_unitary(x)), 25.0, 1e-12);
}

TEST(IdftUnitary, Examples) {
    expect_seq_near(idft_unitary({std::sqrt(2.0), 0}), {1, 1});
    expect_seq_near(idft_unitary({1}), {1});
    Rng rng(3);
    const auto x = random_seq(8, rng);
    EXPECT_LT(max_abs_diff(idft_unitary(dft_unitary(x)), x), 1e-12);
}

TEST(Energy, Examples) {
    EXPECT_DOUBLE_EQ(energy({1, 1, 1, 1}), 4.0);
    std::vector<Complex> zc(13);
    for (std::size_t u = 0; u < zc.size(); ++u) {
        zc[u] = unit_root(static_cast<std::int64_t>(u * (u + 1) / 2), 13);
    }
    EXPECT_NEAR(energy(ComplexSeq(zc)), 13.0, 1e-12);
}

TEST(Dft, AgreesWithFloatAngleOracle) {
    Rng rng(11);
    for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 45u, 64u}) {
        const auto x = random_seq(n, rng);
        EXPECT_LT(oracle::max_diff(dft_unitary(x), oracle::unitary_dft(x.samples())), 1e-11) << n;
        EXPECT_LT(oracle::max_diff(dft_classic(x), oracle::dft(x.samples(), +1, 1.0)), 1e-10) << n;
    }
}

TEST(Dft, ParsevalAndScalingProperties) {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(uniform_index(rng, 100));
        const auto x = random_seq(n, rng);
        const auto xu = dft_unitary(x);
        EXPECT_LT(std::abs(energy(xu) - energy(x)), 1e-9 * energy(x));
        const auto xc = dft_classic(x);
        const double root = std::sqrt(static_cast<double>(n));
        for (std::size_t f = 0; f < n; ++f) {
            ASSERT_LT(std::abs(xc[f] - root * xu[f]), 1e-10 * root * max_abs(xu) + 1e-13);
        }
        EXPECT_LT(max_abs_diff(idft_classic(xc), x), 1e-12 * max_abs(x) * static_cast<double>(n));
    }
}

TEST(Dft, RoundtripUpTo4096) {
    Rng rng(9);
    for (std::size_t n : {17u, 256u, 1000u, 4096u}) {
        const auto x = random_seq(n, rng);
        EXPECT_LT(max_abs_diff(idft_unitary(dft_unitary(x)), x), 1e-12 * max_abs(x)) << n;
    }
}
