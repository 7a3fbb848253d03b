#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zczseq/cazac.hpp"
#include "zczseq/random.hpp"

using namespace zczseq;

TEST(ZadoffChu, SmallExamplesMatchDirectFormula) {
    const auto a3 = zadoff_chu({3, 1, 0});
    const std::vector<Complex> want3{1.0, std::polar(1.0, -2.0 * std::numbers::pi / 3.0), 1.0};
    EXPECT_LT(oracle::max_diff(a3, want3), 1e-15);
    EXPECT_TRUE(verify_cazac(a3).passed);

    const auto a4 = zadoff_chu({4, 1, 0});
    const Complex e = std::polar(1.0, -std::numbers::pi / 4.0);
    EXPECT_LT(oracle::max_diff(a4, {1.0, e, -1.0, e}), 1e-15);

    EXPECT_THROW(zadoff_chu({4, 2, 0}), ValidationError);
}

TEST(ZadoffChu, AgreesWithFloatOracleAndIsUnitMagnitude) {
    for (std::int64_t len = 1; len <= 40; ++len) {
        for (std::int64_t alpha = 1; alpha < std::max<std::int64_t>(2, len); ++alpha) {
            if (gcd64(alpha, len) != 1) {
                continue;
            }
            for (std::int64_t q : {-2, 0, 3}) {
                const auto a = zadoff_chu({len, alpha, q});
                ASSERT_LT(oracle::max_diff(a, oracle::zadoff_chu(len, alpha, q)), 1e-10);
                for (const auto& v : a) {
                    ASSERT_LT(std::abs(std::abs(v) - 1.0), 1e-12);
                }
            }
        }
    }
}

TEST(ZcShiftIdentity, Examples) {
    EXPECT_TRUE(zc_cyclic_shift_identity_check({5, 1, 0}, 1));
    EXPECT_TRUE(zc_cyclic_shift_identity_check({4, 1, 0}, 0));
    EXPECT_TRUE(zc_cyclic_shift_identity_check({9, 2, 1}, 3));
}

TEST(ZcShiftIdentity, HoldsForAllShiftsUpTo32) {
    for (std::int64_t len = 1; len <= 32; ++len) {
        for (std::int64_t alpha = 1; alpha < std::max<std::int64_t>(2, len); ++alpha) {
            if (gcd64(alpha, len) != 1) {
                continue;
            }
            for (std::int64_t q : {-1, 0, 2}) {
                for (std::int64_t shift = -len; shift <= len; ++shift) {
                    ASSERT_TRUE(zc_cyclic_shift_identity_check({len, alpha, q}, shift))
                        << "L=" << len << " alpha=" << alpha << " q=" << q << " shift=" << shift;
                }
            }
        }
    }
}

TEST(VerifyCazac, Examples) {
    EXPECT_TRUE(verify_cazac(zadoff_chu({7, 3, 0})).passed);
    EXPECT_TRUE(verify_cazac({1, 1, 1, -1}).passed);
    const auto bad = verify_cazac({1, 0, 0, 0});
    EXPECT_FALSE(bad.passed);
    EXPECT_DOUBLE_EQ(bad.magnitudeDeviation, 1.0);
    EXPECT_FALSE(verify_cazac({1, 1}).passed);
}

TEST(VerifyCazac, AcceptsScaledCazac) {
    std::vector<Complex> x;
    for (const auto& v : zadoff_chu({11, 2, 0})) {
        x.push_back(3.5 * v);
    }
    EXPECT_TRUE(verify_cazac(ComplexSeq(x)).passed);
}

TEST(VerifyMcazac, Examples) {
    const auto frank = generalized_unified(default_unified_params(2, 1));
    EXPECT_TRUE(verify_mcazac(frank, 2).passed);
    EXPECT_TRUE(verify_mcazac(zadoff_chu({8, 1, 0}), 2).passed);
    // L = 6 = A t with t = 3 not a multiple of A = 2: every S_z(l) has magnitude sqrt(3),
    // so no unique branch exists.
    const auto zc6 = verify_mcazac(zadoff_chu({6, 1, 0}), 2);
    EXPECT_FALSE(zc6.passed);
    EXPECT_EQ(zc6.failedFrequencies, 6u);
    EXPECT_THROW(verify_mcazac(zadoff_chu({7, 1, 0}), 2), ValidationError);
}

TEST(LegacyUnified, Examples) {
    LegacyUnifiedParams p;
    p.a = 2;
    p.s = 1;
    p.r0 = 1;
    p.n0 = 0;
    p.r1 = 1;
    p.n1 = 0;
    p.mu = Permutation::identity(2);
    p.eta = {1.0, 1.0};
    EXPECT_TRUE(verify_mcazac(legacy_unified(p), 2).passed);

    p.s = 2;
    const auto a8 = legacy_unified(p);
    EXPECT_EQ(a8.size(), 8u);
    EXPECT_TRUE(verify_cazac(a8).passed);
    EXPECT_TRUE(verify_mcazac(a8, 2).passed);

    p.r0 = 2;
    EXPECT_THROW(legacy_unified(p), ValidationError);
}

TEST(LegacyUnified, RejectsEachViolatedCondition) {
    LegacyUnifiedParams p;
    p.a = 3;
    p.s = 2;
    p.mu = Permutation::identity(3);
    p.eta = {1.0, 1.0, 1.0};
    p.n0 = 1;  // (s+1) n0 = 3 is odd
    EXPECT_THROW(legacy_unified(p), ValidationError);
    p.n0 = 0;
    p.r1 = 3;  // gcd(r1, A) = 3
    EXPECT_THROW(legacy_unified(p), ValidationError);
    p.r1 = 1;
    p.eta[1] = 0.5;
    EXPECT_THROW(legacy_unified(p), ValidationError);
}

// Direct evaluation of the legacy formula with floating angles:
// eta(l) exp(-j pi phi_l k^2 / s) exp(-j 2 pi (r1 mu(l) + n1) i / t).
TEST(LegacyUnified, MatchesFloatOracle) {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t a = 1 + uniform_index(rng, 4);
        const std::int64_t s = 1 + uniform_index(rng, 3);
        const auto p = random_legacy_params(a, s, rng);
        const auto got = legacy_unified(p);
        const std::int64_t t = s * a;
        std::vector<Complex> want(static_cast<std::size_t>(a * t));
        for (std::int64_t l = 0; l < a; ++l) {
            const double phi = static_cast<double>((s + 1) * (p.r0 + p.n0 * l * (l + 1) / 2));
            for (std::int64_t i = 0; i < t; ++i) {
                const double k = static_cast<double>(i % s);
                want[static_cast<std::size_t>(i * a + l)] =
                    p.eta[static_cast<std::size_t>(l)] * oracle::w(static_cast<double>(s), phi * k * k / 2.0) *
                    oracle::w(static_cast<double>(t),
                              static_cast<double>((p.r1 * p.mu(static_cast<std::size_t>(l)) + p.n1) * i));
            }
        }
        ASSERT_LT(oracle::max_diff(got, want), 1e-9);
    }
}

TEST(GeneralizedUnified, Examples) {
    const auto frank = generalized_unified(default_unified_params(2, 1));
    EXPECT_LT(oracle::max_diff(frank, {1.0, 1.0, 1.0, -1.0}), 1e-15);
    EXPECT_TRUE(verify_cazac(frank).passed);

    Rng rng(4);
    UnifiedMCAZACParams p;
    p.a = 3;
    p.s = 2;
    p.eta = random_eta(3, rng);
    p.gl = {zadoff_chu({2, 1, 0}), zadoff_chu({2, 1, 1}), zadoff_chu({2, 1, -1})};
    p.mu = Permutation({2, 0, 1});
    const auto a18 = generalized_unified(p);
    EXPECT_EQ(a18.size(), 18u);
    EXPECT_TRUE(verify_cazac(a18).passed);
    EXPECT_TRUE(verify_mcazac(a18, 3).passed);

    auto bad = default_unified_params(2, 2);
    bad.gl[0] = ComplexSeq{1.0, 1.0};
    EXPECT_THROW(generalized_unified(bad), ValidationError);
}

TEST(GeneralizedUnified, RejectsMalformedParameters) {
    auto p = default_unified_params(3, 2);
    p.eta.pop_back();
    EXPECT_THROW(generalized_unified(p), ValidationError);
    p = default_unified_params(3, 2);
    p.mu = Permutation::identity(2);
    EXPECT_THROW(generalized_unified(p), ValidationError);
    p = default_unified_params(3, 1);
    p.gl[2] = ComplexSeq{Complex{0.0, 1.0}};
    EXPECT_THROW(generalized_unified(p), ValidationError);
    EXPECT_THROW(Permutation({0, 0, 1}), ValidationError);
    EXPECT_THROW(Permutation({0, 3, 1}), ValidationError);
}

TEST(GeneralizedUnified, RandomDrawsAreMcazac) {
    Rng rng(2024);
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t s = 1; s <= 3; ++s) {
            for (int draw = 0; draw < 20; ++draw) {
                const auto p = random_unified_params(a, s, rng);
                const auto x = generalized_unified(p);
                for (const auto& v : x) {
                    ASSERT_LT(std::abs(std::abs(v) - 1.0), 1e-12);
                }
                ASSERT_TRUE(verify_cazac(x).passed) << "A=" << a << " s=" << s;
                const auto rep = verify_mcazac(x, a);
                ASSERT_TRUE(rep.passed) << "A=" << a << " s=" << s;
                // each branch l is selected exactly t times over z = 0..L-1
                std::vector<int> hits(static_cast<std::size_t>(a), 0);
                for (const auto l : rep.selected) {
                    ++hits[static_cast<std::size_t>(l)];
                }
                for (const auto h : hits) {
                    ASSERT_EQ(h, s * a);
                }
                // the selected branch obeys mu(l) + z = 0 (mod A)
                for (std::size_t z = 0; z < rep.selected.size(); ++z) {
                    const auto l = static_cast<std::size_t>(rep.selected[z]);
                    ASSERT_EQ((p.mu(l) + static_cast<std::int64_t>(z)) % a, 0);
                }
            }
        }
    }
}

TEST(GeneralizedUnified, ModulatabilityClosure) {
    Rng rng(77);
    auto p = random_unified_params(3, 2, rng);
    for (int k = 0; k < 20; ++k) {
        p.eta = random_eta(3, rng);
        ASSERT_TRUE(verify_mcazac(generalized_unified(p), 3).passed);
    }
}

TEST(FourierDual, Examples) {
    EXPECT_TRUE(verify_cazac(fourier_dual(zadoff_chu({5, 1, 0}))).passed);
    EXPECT_EQ(fourier_dual({1.0}), (ComplexSeq{1.0}));
    EXPECT_TRUE(verify_cazac(fourier_dual({1, 1, 1, -1})).passed);
}

TEST(FourierDual, PreservesCazacOnRandomCarriers) {
    Rng rng(8);
    for (int k = 0; k < 30; ++k) {
        const auto x = generalized_unified(random_unified_params(1 + uniform_index(rng, 4), 1 + uniform_index(rng, 3), rng));
        const auto d = fourier_dual(x);
        ASSERT_TRUE(verify_cazac(d).passed);
        EXPECT_NEAR(std::abs(d[0]), 1.0, 1e-12);
    }
}

TEST(PermutationFamily, CongruentExamples) {
    const auto f3 = congruent_permutation_family(3);
    ASSERT_EQ(f3.size(), 2u);
    EXPECT_EQ(f3[0].mapping(), (std::vector<std::int64_t>{0, 1, 2}));
    EXPECT_EQ(f3[1].mapping(), (std::vector<std::int64_t>{0, 2, 1}));
    const auto f2 = congruent_permutation_family(2);
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0].mapping(), (std::vector<std::int64_t>{0, 1}));
    EXPECT_THROW(congruent_permutation_family(4), ValidationError);
    EXPECT_THROW(congruent_permutation_family(1), ValidationError);
}

TEST(PermutationFamily, VerifyExamples) {
    for (std::int64_t a : {2, 3, 5, 7, 11}) {
        EXPECT_TRUE(verify_permutation_family(congruent_permutation_family(a))) << a;
    }
    EXPECT_FALSE(verify_permutation_family(PermutationFamily({Permutation::identity(3), Permutation::identity(3)})));
    EXPECT_FALSE(verify_permutation_family(PermutationFamily({Permutation({0, 1, 2}), Permutation({1, 2, 0})})));
    EXPECT_THROW(PermutationFamily({Permutation::identity(2), Permutation::identity(3)}), ValidationError);
}
