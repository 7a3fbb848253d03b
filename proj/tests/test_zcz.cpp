#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "zczseq/analysis.hpp"
#include "zczseq/random.hpp"
#include "zczseq/zcz.hpp"

using namespace zczseq;

TEST(Interlace, Examples) {
    const auto il = build_interlace(4, 4, {0, 2});
    EXPECT_EQ(il.n(), 16);
    EXPECT_EQ(il.l(), 8);
    EXPECT_EQ(il.allowed_frequencies(), (std::vector<std::int64_t>{0, 2, 4, 6, 8, 10, 12, 14}));

    const auto full = build_interlace(2, 2, {0, 1});
    EXPECT_EQ(full.a(), full.delta());
    EXPECT_EQ(full.allowed_frequencies(), (std::vector<std::int64_t>{0, 1, 2, 3}));

    EXPECT_THROW(build_interlace(4, 1, {0, 0}), ValidationError);
    EXPECT_THROW(build_interlace(4, 1, {2, 1}), ValidationError);
    EXPECT_THROW(build_interlace(4, 1, {0, 4}), ValidationError);
    EXPECT_THROW(build_interlace(4, 1, {-1}), ValidationError);
    EXPECT_THROW(build_interlace(2, 1, {0, 1, 2}), ValidationError);
    EXPECT_THROW(build_interlace(2, 0, {0}), ValidationError);
    EXPECT_THROW(build_interlace(2, 1, {}), ValidationError);
}

TEST(ZazExtension, Examples) {
    EXPECT_EQ(zaz_extended_offsets(4, {1, 2, 2, {0}}), (std::vector<std::int64_t>{0, 2}));
    EXPECT_EQ(zaz_extended_offsets(6, {1, 3, 2, {0}}), (std::vector<std::int64_t>{0, 2, 4}));
    EXPECT_EQ(zaz_extended_offsets(6, {2, 1, 3, {0, 1}}), (std::vector<std::int64_t>{0, 1}));
    EXPECT_EQ(zaz_extended_offsets(12, {2, 2, 3, {1, 4}}), (std::vector<std::int64_t>{1, 4, 7, 10}));
    EXPECT_THROW(zaz_extended_offsets(5, {1, 2, 2, {0}}), ValidationError);
    EXPECT_THROW(zaz_extended_offsets(4, {1, 2, 2, {2}}), ValidationError);
    EXPECT_THROW(zaz_extended_offsets(8, {2, 2, 2, {1, 1}}), ValidationError);
}

TEST(OrthogonalSet, DftExamples) {
    const auto b2 = orthogonal_set_dft(2);
    EXPECT_EQ(b2[0], (ComplexSeq{1, 1}));
    EXPECT_EQ(b2[1], (ComplexSeq{1, -1}));
    EXPECT_EQ(orthogonal_set_dft(1)[0], (ComplexSeq{1}));
    const auto b3 = orthogonal_set_dft(3);
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            EXPECT_NEAR(std::abs(b3.inner(x, y)), x == y ? 3.0 : 0.0, 1e-12);
        }
    }
}

TEST(OrthogonalSet, ZcExamples) {
    // a = ZC(4,1,0) = [1, e^{-j pi/4}, -1, e^{-j pi/4}], t = 2, A = 2:
    // b_0 = a(0) [1, 1], b_1 = a(2) [1, -1] = [-1, 1]
    const auto b = orthogonal_set_zc({4, 1, 0}, 2);
    EXPECT_LT(oracle::max_diff(b[0], {1.0, 1.0}), 1e-15);
    EXPECT_LT(oracle::max_diff(b[1], {-1.0, 1.0}), 1e-15);
    EXPECT_EQ(orthogonal_set_zc({5, 2, 0}, 5)[0], (ComplexSeq{1}));
    EXPECT_THROW(orthogonal_set_zc({6, 1, 0}, 4), ValidationError);

    for (std::int64_t a = 1; a <= 6; ++a) {
        for (std::int64_t t = 1; t <= 6; ++t) {
            for (std::int64_t alpha = 1; alpha < a * t; ++alpha) {
                if (gcd64(alpha, a * t) == 1) {
                    EXPECT_NO_THROW(orthogonal_set_zc({a * t, alpha, 1}, t));
                }
            }
        }
    }
}

TEST(OrthogonalSet, WalshAndInvalidRows) {
    const auto h4 = orthogonal_set_walsh(4);
    EXPECT_EQ(h4[3], (ComplexSeq{1, -1, -1, 1}));
    EXPECT_THROW(orthogonal_set_walsh(3), ValidationError);
    EXPECT_THROW(OrthogonalSet({ComplexSeq{1, 1}, ComplexSeq{1, 1}}), ValidationError);
    EXPECT_THROW(OrthogonalSet({ComplexSeq{1, 1}, ComplexSeq{2, -2}}), ValidationError);
}

TEST(ModulationSequences, Examples) {
    const auto a = zadoff_chu({4, 1, 0});
    const auto c1 = modulation_sequences(orthogonal_set_dft(1), a);
    ASSERT_EQ(c1.size(), 1u);
    EXPECT_EQ(c1[0], a);

    const auto c2 = modulation_sequences(orthogonal_set_dft(2), a);
    for (std::size_t u = 0; u < 4; ++u) {
        EXPECT_LT(std::abs(c2[1][u] - (u % 2 == 0 ? 1.0 : -1.0) * a[u]), 1e-15);
    }
    EXPECT_THROW(modulation_sequences(orthogonal_set_dft(3), a), ValidationError);
}

TEST(ModulationSequences, ZcDerivedSetGivesCyclicShifts) {
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t t = 1; t <= 6; ++t) {
            const std::int64_t len = a * t;
            for (std::int64_t alpha = 1; alpha < std::max<std::int64_t>(2, len); ++alpha) {
                if (gcd64(alpha, len) != 1) {
                    continue;
                }
                for (std::int64_t q : {-1, 0, 2}) {
                    const ZCParams zc{len, alpha, q};
                    const auto carrier = zadoff_chu(zc);
                    const auto c = modulation_sequences(orthogonal_set_zc(zc, t), carrier);
                    for (std::int64_t n = 0; n < a; ++n) {
                        for (std::int64_t u = 0; u < len; ++u) {
                            ASSERT_LT(std::abs(c[static_cast<std::size_t>(n)][static_cast<std::size_t>(u)] -
                                               carrier[static_cast<std::size_t>((u + t * n) % len)]),
                                      1e-12);
                        }
                    }
                }
            }
        }
    }
}

TEST(Synthesize, MatchesDenseInverseTransform) {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t delta = 1 + uniform_index(rng, 8);
        const std::int64_t t = 1 + uniform_index(rng, 8);
        const std::int64_t a = 1 + uniform_index(rng, delta);
        std::vector<std::int64_t> offsets;
        for (std::int64_t j = 0; j < delta; ++j) {
            if (static_cast<std::int64_t>(offsets.size()) < a &&
                uniform_index(rng, delta - j) < a - static_cast<std::int64_t>(offsets.size())) {
                offsets.push_back(j);
            }
        }
        const auto il = build_interlace(delta, t, offsets);
        std::vector<Complex> c(static_cast<std::size_t>(il.l()));
        for (auto& v : c) {
            v = random_unit_phase(rng);
        }
        const auto set = synthesize(il, {ComplexSeq(c)});
        ASSERT_LT(oracle::max_diff(set.sequences[0], oracle::dense_synthesis(delta, t, offsets, c)), 1e-11);
        EXPECT_NEAR(energy(set.sequences[0]), static_cast<double>(il.l()), 1e-9);
    }
}

TEST(Synthesize, MinimalZcSetReachesBound) {
    const auto il = build_interlace(2, 2, {0, 1});
    const auto set = build_sequence_set(il, orthogonal_set_dft(2), zadoff_chu({4, 1, 0}));
    ASSERT_EQ(set.sequences.size(), 2u);
    EXPECT_EQ(set.sequences[0].size(), 4u);
    const auto zaz0 = measure_zones(periodic_acorr(set.sequences[0])).zoneLength;
    const auto zaz1 = measure_zones(periodic_acorr(set.sequences[1])).zoneLength;
    const auto zccz = measure_zones(periodic_xcorr(set.sequences[0], set.sequences[1])).zoneLength;
    ASSERT_TRUE(zccz.has_value());
    const auto zcz = std::min({*zaz0, *zaz1, *zccz});
    EXPECT_EQ(zcz, 1u);
    EXPECT_EQ(static_cast<std::int64_t>(zcz), zcz_bound(4, 2));
}

TEST(Synthesize, ZazExtendedSetWithUnifiedCarrier) {
    const auto il = build_interlace(4, 4, zaz_extended_offsets(4, {1, 2, 2, {0}}));
    const auto set = build_sequence_set(il, orthogonal_set_dft(2), generalized_unified(default_unified_params(2, 2)));
    ASSERT_EQ(set.sequences.size(), 2u);
    for (const auto& s : set.sequences) {
        EXPECT_EQ(s.size(), 16u);
        EXPECT_EQ(measure_zones(periodic_acorr(s)).zoneLength, 7u);
    }
    const auto sc = spectral_compliance(set);
    EXPECT_TRUE(sc.passed);
    EXPECT_LT(sc.maxOutOfBand, 1e-9);
}

TEST(Synthesize, RejectsLengthMismatch) {
    const auto il = build_interlace(4, 4, {0, 2});
    EXPECT_THROW(synthesize(il, {zadoff_chu({7, 1, 0})}), ValidationError);
    EXPECT_THROW(synthesize(il, {}), ValidationError);
    EXPECT_THROW(build_sequence_set(il, orthogonal_set_dft(3), zadoff_chu({8, 1, 0})), ValidationError);
}

TEST(Synthesize, ConstantEnvelopeWithMcazacCarrier) {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t a = 1 + uniform_index(rng, 4);
        const std::int64_t s = 1 + uniform_index(rng, 2);
        const std::int64_t delta = a + uniform_index(rng, 4);
        std::vector<std::int64_t> offsets;
        for (std::int64_t l = 0; l < a; ++l) {
            offsets.push_back(l * (delta / a));
        }
        const auto il = build_interlace(delta, s * a, offsets);
        const auto set = build_sequence_set(il, orthogonal_set_dft(a), generalized_unified(random_unified_params(a, s, rng)));
        const double expected = std::sqrt(static_cast<double>(a) / static_cast<double>(delta));
        for (const auto& seq : set.sequences) {
            for (const auto& v : seq) {
                ASSERT_NEAR(std::abs(v), expected, 1e-9);
            }
        }
    }
}

TEST(Synthesize, ZeroDelayOrthogonalityWithinSet) {
    Rng rng(12);
    const auto il = build_interlace(6, 6, {0, 1, 4});
    for (const auto& ortho : {orthogonal_set_dft(3), orthogonal_set_zc({18, 5, 0}, 6)}) {
        const auto set = build_sequence_set(il, ortho, generalized_unified(random_unified_params(3, 2, rng)));
        for (std::size_t x = 0; x < 3; ++x) {
            for (std::size_t y = 0; y < 3; ++y) {
                if (x != y) {
                    EXPECT_LT(std::abs(periodic_xcorr(set.sequences[x], set.sequences[y])[0]), 1e-9 * 18.0);
                }
            }
        }
    }
}

TEST(MultiSet, CongruentFamilyA3) {
    Rng rng(5);
    const auto il = build_interlace(4, 3, {0, 1, 3});
    auto params = random_unified_params(3, 1, rng);
    const auto sets = multi_set_generate(il, params, congruent_permutation_family(3), orthogonal_set_dft(3));
    ASSERT_EQ(sets.size(), 2u);
    for (const auto& set : sets) {
        EXPECT_EQ(set.sequences.size(), 3u);
        EXPECT_EQ(set.sequences[0].size(), 12u);
    }
    const auto rep = cross_set_check(sets[0], sets[1], 1);
    EXPECT_TRUE(rep.passed);
    EXPECT_NEAR(rep.maxMagnitude, 3.0, 1e-9);
}

TEST(MultiSet, SingleMemberFamilyEqualsPlainSynthesis) {
    Rng rng(6);
    const auto il = build_interlace(3, 4, {0, 2});
    auto params = random_unified_params(2, 2, rng);
    const auto ortho = orthogonal_set_dft(2);
    const auto sets = multi_set_generate(il, params, congruent_permutation_family(2), ortho);
    ASSERT_EQ(sets.size(), 1u);
    params.mu = congruent_permutation_family(2)[0];
    const auto direct = build_sequence_set(il, ortho, generalized_unified(params));
    for (std::size_t n = 0; n < 2; ++n) {
        EXPECT_EQ(sets[0].sequences[n], direct.sequences[n]);
    }
}

TEST(MultiSet, RejectsInconsistentInputs) {
    Rng rng(1);
    const auto il = build_interlace(4, 3, {0, 1, 3});
    const auto params = random_unified_params(3, 1, rng);
    const PermutationFamily bad({Permutation({0, 1, 2}), Permutation({1, 2, 0})});
    EXPECT_THROW(multi_set_generate(il, params, bad, orthogonal_set_dft(3)), ValidationError);
    const auto wrongT = build_interlace(4, 6, {0, 1, 3});
    EXPECT_THROW(multi_set_generate(wrongT, params, congruent_permutation_family(3), orthogonal_set_dft(3)),
                 ValidationError);
}
