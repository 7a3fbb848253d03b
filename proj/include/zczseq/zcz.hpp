#pragma once

// Spectrally constrained ZCZ sequence sets.
//
// The N = delta * t DFT bins are split into t subbands of delta bins; the
// same A offsets j_0 < ... < j_{A-1} are used in every subband. Sequence n
// of a set carries c_n(Ai + l) = b_n(l) a(Ai + l) on bin delta*i + j_l and
// nothing elsewhere:
//
//     s_n(k) = (1/sqrt N) sum_{i,l} c_n(Ai + l) W_N^{-k (delta i + j_l)}.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zczseq/cazac.hpp"
#include "zczseq/numerics.hpp"

namespace zczseq {

class InterlaceSpec {
public:
    InterlaceSpec(std::int64_t delta, std::int64_t t, std::vector<std::int64_t> offsets)
        : delta_(delta), t_(t), offsets_(std::move(offsets)) {
        if (delta_ < 1 || t_ < 1) {
            throw ValidationError("interlace: delta and t must be >= 1");
        }
        if (offsets_.empty()) {
            throw ValidationError("interlace: at least one offset is required");
        }
        if (static_cast<std::int64_t>(offsets_.size()) > delta_) {
            throw ValidationError("interlace: A = " + std::to_string(offsets_.size()) +
                                  " offsets exceed subband width delta = " + std::to_string(delta_));
        }
        for (std::size_t l = 0; l < offsets_.size(); ++l) {
            if (offsets_[l] < 0 || offsets_[l] >= delta_) {
                throw ValidationError("interlace: offset " + std::to_string(offsets_[l]) + " outside 0.." +
                                      std::to_string(delta_ - 1));
            }
            if (l > 0 && offsets_[l] <= offsets_[l - 1]) {
                throw ValidationError("interlace: offsets must be strictly increasing (duplicate or unordered at index " +
                                      std::to_string(l) + ")");
            }
        }
    }

    [[nodiscard]] std::int64_t delta() const noexcept { return delta_; }
    [[nodiscard]] std::int64_t t() const noexcept { return t_; }
    [[nodiscard]] std::int64_t a() const noexcept { return static_cast<std::int64_t>(offsets_.size()); }
    [[nodiscard]] std::int64_t n() const noexcept { return delta_ * t_; }
    [[nodiscard]] std::int64_t l() const noexcept { return a() * t_; }
    [[nodiscard]] const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }

    // Bin carrying modulation index u = Ai + l.
    [[nodiscard]] std::int64_t frequency_of(std::int64_t u) const noexcept {
        return delta_ * (u / a()) + offsets_[static_cast<std::size_t>(u % a())];
    }

    // All L allowed bins, in increasing order.
    [[nodiscard]] std::vector<std::int64_t> allowed_frequencies() const {
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(l()));
        for (std::int64_t u = 0; u < l(); ++u) {
            out.push_back(frequency_of(u));
        }
        return out;
    }

    [[nodiscard]] std::vector<bool> allowed_mask() const {
        std::vector<bool> mask(static_cast<std::size_t>(n()), false);
        for (std::int64_t u = 0; u < l(); ++u) {
            mask[static_cast<std::size_t>(frequency_of(u))] = true;
        }
        return mask;
    }

    friend bool operator==(const InterlaceSpec&, const InterlaceSpec&) = default;

private:
    std::int64_t delta_;
    std::int64_t t_;
    std::vector<std::int64_t> offsets_;
};

inline InterlaceSpec build_interlace(std::int64_t delta, std::int64_t t, std::vector<std::int64_t> offsets) {
    return {delta, t, std::move(offsets)};
}

// Offsets of the form j_{A' i' + l'} = (delta / sigma) i' + j'_{l'} with
// A = A' sigma and delta = A' sigma B; they extend the ZAZ to t sigma - 1.
struct ZazExtensionSpec {
    std::int64_t aPrime = 1;
    std::int64_t sigma = 1;
    std::int64_t bigB = 1;
    std::vector<std::int64_t> innerOffsets{0};
};

inline std::vector<std::int64_t> zaz_extended_offsets(std::int64_t delta, const ZazExtensionSpec& ext) {
    if (ext.aPrime < 1 || ext.sigma < 1 || ext.bigB < 1) {
        throw ValidationError("zaz extension: A', sigma and B must be >= 1");
    }
    if (ext.aPrime * ext.sigma * ext.bigB != delta) {
        throw ValidationError("zaz extension: A' sigma B = " + std::to_string(ext.aPrime * ext.sigma * ext.bigB) +
                              " does not equal delta = " + std::to_string(delta));
    }
    if (static_cast<std::int64_t>(ext.innerOffsets.size()) != ext.aPrime) {
        throw ValidationError("zaz extension: expected A' = " + std::to_string(ext.aPrime) + " inner offsets");
    }
    const std::int64_t block = delta / ext.sigma;
    for (std::size_t l = 0; l < ext.innerOffsets.size(); ++l) {
        const auto j = ext.innerOffsets[l];
        if (j < 0 || j >= block) {
            throw ValidationError("zaz extension: inner offset " + std::to_string(j) + " outside 0.." +
                                  std::to_string(block - 1));
        }
        if (l > 0 && j <= ext.innerOffsets[l - 1]) {
            throw ValidationError("zaz extension: inner offsets must be strictly increasing");
        }
    }
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(ext.aPrime * ext.sigma));
    for (std::int64_t ip = 0; ip < ext.sigma; ++ip) {
        for (const auto j : ext.innerOffsets) {
            out.push_back(block * ip + j);
        }
    }
    return out;
}

// A unit-magnitude, mutually orthogonal length-A sequences.
class OrthogonalSet {
public:
    explicit OrthogonalSet(std::vector<ComplexSeq> rows) : rows_(std::move(rows)) {
        const std::size_t a = rows_.size();
        if (a == 0) {
            throw ValidationError("orthogonal set: needs at least one row");
        }
        for (std::size_t n = 0; n < a; ++n) {
            if (rows_[n].size() != a) {
                throw ValidationError("orthogonal set: row " + std::to_string(n) + " must have length A = " +
                                      std::to_string(a));
            }
            for (const auto& v : rows_[n]) {
                if (std::abs(std::abs(v) - 1.0) > 1e-10) {
                    throw ValidationError("orthogonal set: row " + std::to_string(n) + " is not unit magnitude");
                }
            }
        }
        for (std::size_t x = 0; x < a; ++x) {
            for (std::size_t y = x + 1; y < a; ++y) {
                if (std::abs(inner(x, y)) > 1e-10 * static_cast<double>(a)) {
                    throw ValidationError("orthogonal set: rows " + std::to_string(x) + " and " + std::to_string(y) +
                                          " are not orthogonal");
                }
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] const ComplexSeq& operator[](std::size_t n) const noexcept { return rows_[n]; }
    [[nodiscard]] const std::vector<ComplexSeq>& rows() const noexcept { return rows_; }

    // sum_l b_x(l) conj(b_y(l))
    [[nodiscard]] Complex inner(std::size_t x, std::size_t y) const noexcept {
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < rows_.size(); ++l) {
            acc += rows_[x][l] * std::conj(rows_[y][l]);
        }
        return acc;
    }

private:
    std::vector<ComplexSeq> rows_;
};

// b_n(l) = W_A^{nl}
inline OrthogonalSet orthogonal_set_dft(std::int64_t a) {
    if (a < 1) {
        throw ValidationError("orthogonal_set_dft: A must be >= 1");
    }
    std::vector<ComplexSeq> rows;
    for (std::int64_t n = 0; n < a; ++n) {
        std::vector<Complex> row(static_cast<std::size_t>(a));
        for (std::int64_t l = 0; l < a; ++l) {
            row[static_cast<std::size_t>(l)] = unit_root(n * l, a);
        }
        rows.emplace_back(std::move(row));
    }
    return OrthogonalSet(std::move(rows));
}

// b_n(l) = a(tn) W_A^{alpha n l} for the ZC carrier a of length L = At.
// With the same ZC as carrier this makes c_n(u) = a(u + tn).
inline OrthogonalSet orthogonal_set_zc(const ZCParams& zc, std::int64_t t) {
    validate(zc);
    if (t < 1 || zc.length % t != 0) {
        throw ValidationError("orthogonal_set_zc: t = " + std::to_string(t) + " does not divide ZC length " +
                              std::to_string(zc.length));
    }
    const std::int64_t a = zc.length / t;
    if (gcd64(zc.root, a) != 1) {
        throw ValidationError("orthogonal_set_zc: root index not relatively prime to A");
    }
    // W_A = W_{2L}^{2t}
    const std::int64_t m = 2 * zc.length;
    std::vector<ComplexSeq> rows;
    for (std::int64_t n = 0; n < a; ++n) {
        const std::int64_t base = zc_phase(zc, t * n).numerator();
        std::vector<Complex> row(static_cast<std::size_t>(a));
        for (std::int64_t l = 0; l < a; ++l) {
            const std::int64_t lin = mul_mod(mul_mod(zc.root, n * l, m), 2 * t, m);
            row[static_cast<std::size_t>(l)] = unit_root(base + lin, m);
        }
        rows.emplace_back(std::move(row));
    }
    return OrthogonalSet(std::move(rows));
}

// Sylvester Walsh-Hadamard rows, A a power of two: b_n(l) = (-1)^{popcount(n & l)}.
inline OrthogonalSet orthogonal_set_walsh(std::int64_t a) {
    if (a < 1 || (a & (a - 1)) != 0) {
        throw ValidationError("orthogonal_set_walsh: A = " + std::to_string(a) + " is not a power of two");
    }
    std::vector<ComplexSeq> rows;
    for (std::int64_t n = 0; n < a; ++n) {
        std::vector<Complex> row(static_cast<std::size_t>(a));
        for (std::int64_t l = 0; l < a; ++l) {
            row[static_cast<std::size_t>(l)] = (__builtin_popcountll(static_cast<unsigned long long>(n & l)) % 2 == 0)
                ? Complex{1.0, 0.0}
                : Complex{-1.0, 0.0};
        }
        rows.emplace_back(std::move(row));
    }
    return OrthogonalSet(std::move(rows));
}

// c_n(u) = b_n(u mod A) a(u)
inline std::vector<ComplexSeq> modulation_sequences(const OrthogonalSet& ortho, const ComplexSeq& carrier) {
    const std::size_t a = ortho.size();
    if (carrier.size() % a != 0) {
        throw ValidationError("modulation_sequences: carrier length " + std::to_string(carrier.size()) +
                              " is not a multiple of A = " + std::to_string(a));
    }
    std::vector<ComplexSeq> out;
    out.reserve(a);
    for (std::size_t n = 0; n < a; ++n) {
        std::vector<Complex> c(carrier.size());
        for (std::size_t u = 0; u < carrier.size(); ++u) {
            c[u] = ortho[n][u % a] * carrier[u];
        }
        out.emplace_back(std::move(c));
    }
    return out;
}

struct SequenceSet {
    std::vector<ComplexSeq> sequences;
    InterlaceSpec interlace;
    std::optional<OrthogonalSet> orthoSet;
    std::optional<ComplexSeq> carrier;
    std::string label;
};

// Places each modulation sequence on the allowed bins and returns the
// unitary-normalized time-domain sequences.
inline SequenceSet synthesize(const InterlaceSpec& interlace, const std::vector<ComplexSeq>& mods) {
    if (mods.empty()) {
        throw ValidationError("synthesize: no modulation sequences given");
    }
    const std::int64_t n = interlace.n();
    const std::int64_t len = interlace.l();
    const auto freqs = interlace.allowed_frequencies();
    const RootTable w(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    SequenceSet set{{}, interlace, std::nullopt, std::nullopt, {}};
    set.sequences.reserve(mods.size());
    for (std::size_t idx = 0; idx < mods.size(); ++idx) {
        const auto& c = mods[idx];
        if (static_cast<std::int64_t>(c.size()) != len) {
            throw ValidationError("synthesize: modulation sequence " + std::to_string(idx) + " has length " +
                                  std::to_string(c.size()) + ", expected L = " + std::to_string(len));
        }
        std::vector<Complex> s(static_cast<std::size_t>(n));
        for (std::int64_t k = 0; k < n; ++k) {
            Complex acc{0.0, 0.0};
            for (std::int64_t u = 0; u < len; ++u) {
                acc += c[static_cast<std::size_t>(u)] * w(-((k * freqs[static_cast<std::size_t>(u)]) % n));
            }
            s[static_cast<std::size_t>(k)] = acc * scale;
        }
        set.sequences.emplace_back(std::move(s));
    }
    return set;
}

inline SequenceSet build_sequence_set(const InterlaceSpec& interlace, const OrthogonalSet& ortho,
                                      const ComplexSeq& carrier, std::string label = {}) {
    if (static_cast<std::int64_t>(ortho.size()) != interlace.a()) {
        throw ValidationError("build_sequence_set: orthogonal set size " + std::to_string(ortho.size()) +
                              " does not match A = " + std::to_string(interlace.a()));
    }
    auto set = synthesize(interlace, modulation_sequences(ortho, carrier));
    set.orthoSet = ortho;
    set.carrier = carrier;
    set.label = std::move(label);
    return set;
}

// One set per permutation mu_r in the family, each with carrier
// a_r(iA + l) = eta(l) g_l(i mod s) W_t^{mu_r(l) i}.
inline std::vector<SequenceSet> multi_set_generate(const InterlaceSpec& interlace, const UnifiedMCAZACParams& params,
                                                   const PermutationFamily& fam, const OrthogonalSet& ortho) {
    if (!verify_permutation_family(fam)) {
        throw ValidationError("multi_set_generate: permutation family violates the difference-closure condition");
    }
    if (static_cast<std::int64_t>(fam.degree()) != params.a || params.a != interlace.a()) {
        throw ValidationError("multi_set_generate: A differs between interlace, carrier parameters and family");
    }
    if (interlace.t() != params.s * params.a) {
        throw ValidationError("multi_set_generate: interlace t = " + std::to_string(interlace.t()) +
                              " must equal s A = " + std::to_string(params.s * params.a));
    }
    std::vector<SequenceSet> out;
    out.reserve(fam.size());
    for (std::size_t r = 0; r < fam.size(); ++r) {
        UnifiedMCAZACParams pr = params;
        pr.mu = fam[r];
        out.push_back(build_sequence_set(interlace, ortho, generalized_unified(pr), "set" + std::to_string(r)));
    }
    return out;
}

} // namespace zczseq
