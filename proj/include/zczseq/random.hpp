#pragma once

// Reproducible random draws of construction parameters.
// Only raw mt19937_64 output is used (no std distributions), so a seed
// yields the same draws on every standard library.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "zczseq/cazac.hpp"

namespace zczseq {

using Rng = std::mt19937_64;

inline std::int64_t uniform_index(Rng& rng, std::int64_t n) {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex random_unit_phase(Rng& rng) {
    const double angle = 2.0 * std::numbers::pi * uniform_unit(rng);
    return {std::cos(angle), std::sin(angle)};
}

inline std::vector<Complex> random_eta(std::int64_t a, Rng& rng) {
    std::vector<Complex> eta(static_cast<std::size_t>(a));
    for (auto& v : eta) {
        v = random_unit_phase(rng);
    }
    return eta;
}

inline Permutation random_permutation(std::int64_t a, Rng& rng) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(a));
    for (std::int64_t i = 0; i < a; ++i) {
        m[static_cast<std::size_t>(i)] = i;
    }
    for (std::int64_t i = a - 1; i > 0; --i) {
        std::swap(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(uniform_index(rng, i + 1))]);
    }
    return Permutation(std::move(m));
}

inline std::int64_t random_coprime(std::int64_t n, Rng& rng) {
    if (n == 1) {
        return 1 + uniform_index(rng, 4);
    }
    for (;;) {
        const std::int64_t r = 1 + uniform_index(rng, n - 1);
        if (gcd64(r, n) == 1) {
            return r;
        }
    }
}

// Unit-magnitude CAZAC of length s: a phase-rotated, linearly modulated ZC
// sequence, or its Fourier dual rescaled to unit magnitude. s = 1 gives [1].
inline ComplexSeq random_cazac(std::int64_t s, Rng& rng) {
    if (s == 1) {
        return ComplexSeq{Complex{1.0, 0.0}};
    }
    const ZCParams zc{s, random_coprime(s, rng), uniform_index(rng, 2 * s) - s};
    const ComplexSeq base = zadoff_chu(zc);
    const std::int64_t tilt = uniform_index(rng, s);
    const Complex rot = random_unit_phase(rng);
    std::vector<Complex> g(static_cast<std::size_t>(s));
    for (std::int64_t k = 0; k < s; ++k) {
        g[static_cast<std::size_t>(k)] = rot * base[static_cast<std::size_t>(k)] * unit_root(tilt * k, s);
    }
    if (uniform_index(rng, 2) == 1) {
        const ComplexSeq dual = fourier_dual(ComplexSeq(g));
        const double scale = 1.0 / std::abs(dual[0]);
        for (std::int64_t k = 0; k < s; ++k) {
            g[static_cast<std::size_t>(k)] = dual[static_cast<std::size_t>(k)] * scale;
        }
    }
    return ComplexSeq(std::move(g));
}

inline UnifiedMCAZACParams random_unified_params(std::int64_t a, std::int64_t s, Rng& rng) {
    UnifiedMCAZACParams p;
    p.a = a;
    p.s = s;
    p.eta = random_eta(a, rng);
    for (std::int64_t l = 0; l < a; ++l) {
        p.gl.push_back(random_cazac(s, rng));
    }
    p.mu = random_permutation(a, rng);
    return p;
}

// Draws integers until every legacy-construction side condition holds.
inline LegacyUnifiedParams random_legacy_params(std::int64_t a, std::int64_t s, Rng& rng) {
    LegacyUnifiedParams p;
    p.a = a;
    p.s = s;
    for (;;) {
        p.r0 = uniform_index(rng, 4 * s + 1) - 2 * s;
        p.n0 = uniform_index(rng, 9) - 4;
        if (((s + 1) * p.n0) % 2 != 0) {
            continue;
        }
        bool ok = true;
        for (std::int64_t l = 0; l < a && ok; ++l) {
            ok = gcd64(p.r0 + p.n0 * (l * (l + 1) / 2), s) == 1;
        }
        if (ok) {
            break;
        }
    }
    p.r1 = random_coprime(a, rng) + a * uniform_index(rng, 3);
    p.n1 = uniform_index(rng, 4 * s * a + 1) - 2 * s * a;
    p.mu = random_permutation(a, rng);
    p.eta = random_eta(a, rng);
    return p;
}

} // namespace zczseq
