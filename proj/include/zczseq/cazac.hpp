#pragma once

// CAZAC and modulatable CAZAC (MCAZAC) sequences.
//
// Generators: Zadoff-Chu, the legacy unified construction and the
// generalized unified construction
//
//     a(iA + l) = eta(l) g_l(i mod s) W_t^{mu(l) i},   t = sA, L = At,
//
// plus verifiers for the CAZAC property and for modulatability, and the
// permutation families used to build several carriers with bounded
// mutual crosscorrelation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zczseq/correlation.hpp"
#include "zczseq/numerics.hpp"

namespace zczseq {

inline constexpr double kDefaultCazacTol = 1e-9;

struct ZCParams {
    std::int64_t length = 1;
    std::int64_t root = 1;
    std::int64_t q = 0;
};

inline void validate(const ZCParams& p) {
    if (p.length < 1) {
        throw ValidationError("zadoff_chu: length must be >= 1");
    }
    if (gcd64(p.root, p.length) != 1) {
        throw ValidationError("zadoff_chu: root index " + std::to_string(p.root) +
                              " is not relatively prime to length " + std::to_string(p.length));
    }
}

// Phase of a(u) as a numerator over 2L:
// a(u) = W_{2L}^{alpha u (u + (L mod 2) + 2q)}.
// The halving in the textbook form W_L^{alpha u (u + L mod 2 + 2q) / 2} is
// not an integer for even L and odd u, so the doubled root order is used.
inline PhaseExponent zc_phase(const ZCParams& p, std::int64_t u) {
    const std::int64_t m = 2 * p.length;
    const std::int64_t inner = mod_floor(u + (p.length % 2) + 2 * p.q, m);
    return {mul_mod(mul_mod(p.root, u, m), inner, m), m};
}

inline ComplexSeq zadoff_chu(const ZCParams& p) {
    validate(p);
    std::vector<Complex> out(static_cast<std::size_t>(p.length));
    for (std::int64_t u = 0; u < p.length; ++u) {
        out[static_cast<std::size_t>(u)] = unit_root(zc_phase(p, u));
    }
    return ComplexSeq(std::move(out));
}

// Checks a(u + shift) = a(u) a(shift) W_L^{alpha u shift} for every u.
inline bool zc_cyclic_shift_identity_check(const ZCParams& p, std::int64_t shift, double tol = 1e-12) {
    const ComplexSeq a = zadoff_chu(p);
    const std::int64_t n = p.length;
    const Complex a_shift = a[static_cast<std::size_t>(mod_floor(shift, n))];
    for (std::int64_t u = 0; u < n; ++u) {
        const Complex lhs = a[static_cast<std::size_t>(mod_floor(u + shift, n))];
        const Complex rhs = a[static_cast<std::size_t>(u)] * a_shift *
                            unit_root(mul_mod(mul_mod(p.root, u, n), shift, n), n);
        if (std::abs(lhs - rhs) >= tol) {
            return false;
        }
    }
    return true;
}

class Permutation {
public:
    explicit Permutation(std::vector<std::int64_t> mapping) : mapping_(std::move(mapping)) {
        if (mapping_.empty()) {
            throw ValidationError("Permutation: must act on at least one element");
        }
        std::vector<bool> seen(mapping_.size(), false);
        for (const auto v : mapping_) {
            if (v < 0 || v >= static_cast<std::int64_t>(mapping_.size()) || seen[static_cast<std::size_t>(v)]) {
                throw ValidationError("Permutation: mapping is not a bijection on {0.." +
                                      std::to_string(mapping_.size() - 1) + "}");
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(std::size_t size) {
        std::vector<std::int64_t> m(size);
        for (std::size_t i = 0; i < size; ++i) {
            m[i] = static_cast<std::int64_t>(i);
        }
        return Permutation(std::move(m));
    }

    [[nodiscard]] std::size_t size() const noexcept { return mapping_.size(); }
    [[nodiscard]] std::int64_t operator()(std::size_t l) const noexcept { return mapping_[l]; }
    [[nodiscard]] const std::vector<std::int64_t>& mapping() const noexcept { return mapping_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::int64_t> mapping_;
};

// A list of same-size permutations. The pairwise-difference closure is not
// enforced here; see verify_permutation_family.
class PermutationFamily {
public:
    explicit PermutationFamily(std::vector<Permutation> members) : members_(std::move(members)) {
        if (members_.empty()) {
            throw ValidationError("PermutationFamily: needs at least one member");
        }
        for (const auto& m : members_) {
            if (m.size() != members_.front().size()) {
                throw ValidationError("PermutationFamily: members act on different set sizes");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] std::size_t degree() const noexcept { return members_.front().size(); }
    [[nodiscard]] const Permutation& operator[](std::size_t r) const noexcept { return members_[r]; }
    [[nodiscard]] const std::vector<Permutation>& members() const noexcept { return members_; }

private:
    std::vector<Permutation> members_;
};

// mu_r(l) = r l mod A, r = 1..A-1, for prime A.
inline PermutationFamily congruent_permutation_family(std::int64_t a) {
    if (!is_prime(a)) {
        throw ValidationError("congruent_permutation_family: A = " + std::to_string(a) + " is not prime");
    }
    std::vector<Permutation> members;
    for (std::int64_t r = 1; r < a; ++r) {
        std::vector<std::int64_t> m(static_cast<std::size_t>(a));
        for (std::int64_t l = 0; l < a; ++l) {
            m[static_cast<std::size_t>(l)] = (r * l) % a;
        }
        members.emplace_back(std::move(m));
    }
    return PermutationFamily(std::move(members));
}

// True iff for every pair of distinct members the map l -> (mu_a(l) - mu_b(l)) mod A
// is again a bijection.
inline bool verify_permutation_family(const PermutationFamily& fam) {
    const auto a = static_cast<std::int64_t>(fam.degree());
    for (std::size_t x = 0; x < fam.size(); ++x) {
        for (std::size_t y = 0; y < fam.size(); ++y) {
            if (x == y) {
                continue;
            }
            std::vector<bool> seen(static_cast<std::size_t>(a), false);
            for (std::size_t l = 0; l < fam.degree(); ++l) {
                const auto d = static_cast<std::size_t>(mod_floor(fam[x](l) - fam[y](l), a));
                if (seen[d]) {
                    return false;
                }
                seen[d] = true;
            }
        }
    }
    return true;
}

struct CazacReport {
    bool passed = false;
    // max_k | |x(k)| - |x(0)| |
    double magnitudeDeviation = 0.0;
    // max_{p != 0} |theta_xx(p)|
    double maxSidelobe = 0.0;
    double energy = 0.0;
};

inline CazacReport verify_cazac(const ComplexSeq& x, double tol = kDefaultCazacTol) {
    CazacReport rep;
    const double ref = std::abs(x[0]);
    for (const auto& v : x) {
        rep.magnitudeDeviation = std::max(rep.magnitudeDeviation, std::abs(std::abs(v) - ref));
    }
    const auto prof = periodic_acorr(x);
    for (std::size_t p = 1; p < prof.length(); ++p) {
        rep.maxSidelobe = std::max(rep.maxSidelobe, std::abs(prof[p]));
    }
    rep.energy = prof.reference;
    rep.passed = rep.magnitudeDeviation < tol * ref && rep.maxSidelobe < tol * rep.energy;
    // Length 1 with a zero sample is not constant *nonzero* amplitude.
    if (ref == 0.0) {
        rep.passed = false;
    }
    return rep;
}

struct McazacReport {
    bool passed = false;
    std::int64_t a = 1;
    std::int64_t t = 1;
    // Selected branch l(z) for every z = 0..L-1, or -1 where no unique branch exists.
    std::vector<std::int64_t> selected;
    // Worst | |S_z(l)| - sqrt(L) | over selected branches.
    double peakDeviation = 0.0;
    // Worst |S_z(l)| over the branches that must vanish.
    double maxZeroBranch = 0.0;
    std::size_t failedFrequencies = 0;
};

// Modulatability test: with S_z(l) = sum_i x(Ai + l) W_t^{zi}, exactly one l per z
// must reach magnitude sqrt(L) and all others must vanish.
inline McazacReport verify_mcazac(const ComplexSeq& x, std::int64_t a, double tol = kDefaultCazacTol) {
    const auto len = static_cast<std::int64_t>(x.size());
    if (a < 1 || len % a != 0) {
        throw ValidationError("verify_mcazac: A = " + std::to_string(a) + " does not divide length " +
                              std::to_string(len));
    }
    McazacReport rep;
    rep.a = a;
    rep.t = len / a;
    const double root_l = std::sqrt(static_cast<double>(len));
    const double band = tol * root_l;
    const RootTable w(rep.t);
    rep.selected.assign(static_cast<std::size_t>(len), -1);
    std::vector<double> mags(static_cast<std::size_t>(a));

    for (std::int64_t z = 0; z < len; ++z) {
        for (std::int64_t l = 0; l < a; ++l) {
            Complex acc{0.0, 0.0};
            for (std::int64_t i = 0; i < rep.t; ++i) {
                acc += x[static_cast<std::size_t>(a * i + l)] * w((z * i) % rep.t);
            }
            mags[static_cast<std::size_t>(l)] = std::abs(acc);
        }
        const auto top = std::max_element(mags.begin(), mags.end());
        const auto lhat = static_cast<std::int64_t>(top - mags.begin());
        bool ok = std::abs(*top - root_l) < band;
        rep.peakDeviation = std::max(rep.peakDeviation, std::abs(*top - root_l));
        for (std::int64_t l = 0; l < a; ++l) {
            if (l == lhat) {
                continue;
            }
            rep.maxZeroBranch = std::max(rep.maxZeroBranch, mags[static_cast<std::size_t>(l)]);
            ok = ok && mags[static_cast<std::size_t>(l)] < band;
        }
        if (ok) {
            rep.selected[static_cast<std::size_t>(z)] = lhat;
        } else {
            ++rep.failedFrequencies;
        }
    }
    rep.passed = rep.failedFrequencies == 0;
    return rep;
}

// Unitary DFT; for a CAZAC input the result is CAZAC with the same magnitude.
inline ComplexSeq fourier_dual(const ComplexSeq& x) {
    return dft_unitary(x);
}

namespace detail {

inline void require_unit_magnitudes(const std::vector<Complex>& eta, std::int64_t a, const char* who) {
    if (static_cast<std::int64_t>(eta.size()) != a) {
        throw ValidationError(std::string(who) + ": eta must have A = " + std::to_string(a) + " entries");
    }
    for (std::size_t l = 0; l < eta.size(); ++l) {
        if (!std::isfinite(eta[l].real()) || !std::isfinite(eta[l].imag()) ||
            std::abs(std::abs(eta[l]) - 1.0) > 1e-9) {
            throw ValidationError(std::string(who) + ": eta(" + std::to_string(l) + ") is not unit magnitude");
        }
    }
}

inline void require_shape(std::int64_t a, std::int64_t s, const Permutation& mu, const char* who) {
    if (a < 1 || s < 1) {
        throw ValidationError(std::string(who) + ": A and s must be >= 1");
    }
    if (static_cast<std::int64_t>(mu.size()) != a) {
        throw ValidationError(std::string(who) + ": permutation acts on " + std::to_string(mu.size()) +
                              " elements, expected A = " + std::to_string(a));
    }
}

} // namespace detail

struct LegacyUnifiedParams {
    std::int64_t a = 1;
    std::int64_t s = 1;
    std::int64_t r0 = 1;
    std::int64_t n0 = 0;
    std::int64_t r1 = 1;
    std::int64_t n1 = 0;
    Permutation mu = Permutation::identity(1);
    std::vector<Complex> eta{Complex{1.0, 0.0}};
};

inline void validate(const LegacyUnifiedParams& p) {
    detail::require_shape(p.a, p.s, p.mu, "legacy_unified");
    detail::require_unit_magnitudes(p.eta, p.a, "legacy_unified");
    if (((p.s + 1) * p.n0) % 2 != 0) {
        throw ValidationError("legacy_unified: (s + 1) n0 must be even");
    }
    for (std::int64_t l = 0; l < p.a; ++l) {
        const std::int64_t coeff = p.r0 + p.n0 * (l * (l + 1) / 2);
        if (gcd64(coeff, p.s) != 1) {
            throw ValidationError("legacy_unified: gcd(r0 + n0 l(l+1)/2, s) != 1 at l = " + std::to_string(l));
        }
    }
    if (gcd64(p.r1, p.a) != 1) {
        throw ValidationError("legacy_unified: gcd(r1, A) != 1");
    }
}

// a(iA + l) = eta(l) W_{2s}^{phi_l k^2} W_t^{(r1 mu(l) + n1) i},  k = i mod s,
// phi_l = (s + 1)(r0 + n0 l(l+1)/2). Both factors are folded into one
// exponent over 2t before evaluation.
inline ComplexSeq legacy_unified(const LegacyUnifiedParams& p) {
    validate(p);
    const std::int64_t t = p.s * p.a;
    const std::int64_t m = 2 * t;
    std::vector<Complex> out(static_cast<std::size_t>(p.a * t));
    for (std::int64_t l = 0; l < p.a; ++l) {
        const std::int64_t phi = mul_mod(p.s + 1, p.r0 + p.n0 * (l * (l + 1) / 2), m);
        const std::int64_t lin = mod_floor(p.r1 * p.mu(static_cast<std::size_t>(l)) + p.n1, t);
        for (std::int64_t i = 0; i < t; ++i) {
            const std::int64_t k = i % p.s;
            const std::int64_t num = mul_mod(mul_mod(p.a, phi, m), k * k, m) + mul_mod(2 * lin, i, m);
            out[static_cast<std::size_t>(i * p.a + l)] = p.eta[static_cast<std::size_t>(l)] * unit_root(num, m);
        }
    }
    return ComplexSeq(std::move(out));
}

struct UnifiedMCAZACParams {
    std::int64_t a = 1;
    std::int64_t s = 1;
    std::vector<Complex> eta;
    std::vector<ComplexSeq> gl;
    Permutation mu = Permutation::identity(1);
};

// eta = all ones, mu = identity, g_l = ZC(s, 1, 0) for every l.
inline UnifiedMCAZACParams default_unified_params(std::int64_t a, std::int64_t s) {
    if (a < 1 || s < 1) {
        throw ValidationError("default_unified_params: A and s must be >= 1");
    }
    UnifiedMCAZACParams p;
    p.a = a;
    p.s = s;
    p.eta.assign(static_cast<std::size_t>(a), Complex{1.0, 0.0});
    p.gl.assign(static_cast<std::size_t>(a), zadoff_chu({s, 1, 0}));
    p.mu = Permutation::identity(static_cast<std::size_t>(a));
    return p;
}

inline void validate(const UnifiedMCAZACParams& p) {
    detail::require_shape(p.a, p.s, p.mu, "generalized_unified");
    detail::require_unit_magnitudes(p.eta, p.a, "generalized_unified");
    if (static_cast<std::int64_t>(p.gl.size()) != p.a) {
        throw ValidationError("generalized_unified: need one g_l sequence per l (A = " + std::to_string(p.a) + ")");
    }
    for (std::size_t l = 0; l < p.gl.size(); ++l) {
        const auto& g = p.gl[l];
        const std::string tag = "generalized_unified: g_" + std::to_string(l);
        if (static_cast<std::int64_t>(g.size()) != p.s) {
            throw ValidationError(tag + " must have length s = " + std::to_string(p.s));
        }
        if (p.s == 1) {
            if (std::abs(g[0] - Complex{1.0, 0.0}) > 1e-12) {
                throw ValidationError(tag + " must be the single value 1 when s = 1");
            }
            continue;
        }
        for (const auto& v : g) {
            if (std::abs(std::abs(v) - 1.0) > kDefaultCazacTol) {
                throw ValidationError(tag + " is not unit magnitude");
            }
        }
        if (!verify_cazac(g, kDefaultCazacTol).passed) {
            throw ValidationError(tag + " is not a CAZAC sequence");
        }
    }
}

inline ComplexSeq generalized_unified(const UnifiedMCAZACParams& p) {
    validate(p);
    const std::int64_t t = p.s * p.a;
    const RootTable w(t);
    std::vector<Complex> out(static_cast<std::size_t>(p.a * t));
    for (std::int64_t l = 0; l < p.a; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const std::int64_t mu = p.mu(li);
        for (std::int64_t i = 0; i < t; ++i) {
            out[static_cast<std::size_t>(i * p.a + l)] =
                p.eta[li] * p.gl[li][static_cast<std::size_t>(i % p.s)] * w((mu * i) % t);
        }
    }
    return ComplexSeq(std::move(out));
}

} // namespace zczseq
