#pragma once

// Closed-form correlation predictions for interlaced sequence sets and
// set-level checks (spectral compliance, multi-set crosscorrelation bound).
// The brute-force engine lives in correlation.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zczseq/correlation.hpp"
#include "zczseq/zcz.hpp"

namespace zczseq {

// theta(tq) = t sum_l b_x(l) conj(b_y(l)) W_delta^{q j_l}, q = 0..delta-1,
// zero at every delay that is not a multiple of t. For orthogonal rows the
// q = 0 term vanishes; for x = y it is L.
inline CorrelationProfile predicted_xcorr(const InterlaceSpec& interlace, const ComplexSeq& bx, const ComplexSeq& by) {
    const auto a = static_cast<std::size_t>(interlace.a());
    if (bx.size() != a || by.size() != a) {
        throw ValidationError("predicted_xcorr: rows must have length A = " + std::to_string(a));
    }
    CorrelationProfile out;
    out.kind = CorrelationKind::Cross;
    out.reference = std::sqrt(energy(bx) * energy(by)) * static_cast<double>(interlace.t());
    out.values.assign(static_cast<std::size_t>(interlace.n()), Complex{0.0, 0.0});
    const auto t = static_cast<double>(interlace.t());
    for (std::int64_t q = 0; q < interlace.delta(); ++q) {
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < a; ++l) {
            acc += bx[l] * std::conj(by[l]) * unit_root(q * interlace.offsets()[l], interlace.delta());
        }
        out.values[static_cast<std::size_t>(q * interlace.t())] = t * acc;
    }
    return out;
}

// theta(0) = L, theta(tq) = t sum_l W_delta^{q j_l}, zero off multiples of t.
inline CorrelationProfile predicted_acorr(const InterlaceSpec& interlace) {
    CorrelationProfile out;
    out.kind = CorrelationKind::Auto;
    out.reference = static_cast<double>(interlace.l());
    out.values.assign(static_cast<std::size_t>(interlace.n()), Complex{0.0, 0.0});
    out.values[0] = Complex{static_cast<double>(interlace.l()), 0.0};
    const auto t = static_cast<double>(interlace.t());
    for (std::int64_t q = 1; q < interlace.delta(); ++q) {
        Complex acc{0.0, 0.0};
        for (const auto j : interlace.offsets()) {
            acc += unit_root(q * j, interlace.delta());
        }
        out.values[static_cast<std::size_t>(q * interlace.t())] = t * acc;
    }
    return out;
}

// As above for offsets built by zaz_extended_offsets; the terms with
// q not a multiple of sigma are exactly zero.
inline CorrelationProfile predicted_acorr(const InterlaceSpec& interlace, const ZazExtensionSpec& ext) {
    if (zaz_extended_offsets(interlace.delta(), ext) != interlace.offsets()) {
        throw ValidationError("predicted_acorr: interlace offsets do not follow the given ZAZ extension");
    }
    auto out = predicted_acorr(interlace);
    for (std::int64_t q = 1; q < interlace.delta(); ++q) {
        if (q % ext.sigma != 0) {
            out.values[static_cast<std::size_t>(q * interlace.t())] = Complex{0.0, 0.0};
        }
    }
    return out;
}

// Largest elementwise difference between two profiles of equal length.
inline double max_profile_diff(const CorrelationProfile& a, const CorrelationProfile& b) {
    if (a.length() != b.length()) {
        throw ValidationError("max_profile_diff: profile lengths differ");
    }
    double m = 0.0;
    for (std::size_t p = 0; p < a.length(); ++p) {
        m = std::max(m, std::abs(a[p] - b[p]));
    }
    return m;
}

struct SpectralComplianceReport {
    bool passed = false;
    // max |S_n(f)| over f outside the interlace
    double maxOutOfBand = 0.0;
    // max | |S_n(f)| - 1 | over f inside the interlace
    double maxInBandDeviation = 0.0;
};

// Unit-magnitude modulation values are assumed for the in-band check.
inline SpectralComplianceReport spectral_compliance(const SequenceSet& set, double tol = 1e-9) {
    SpectralComplianceReport rep;
    const auto mask = set.interlace.allowed_mask();
    for (const auto& s : set.sequences) {
        if (static_cast<std::int64_t>(s.size()) != set.interlace.n()) {
            throw ValidationError("spectral_compliance: sequence length does not match interlace N");
        }
        const auto spec = dft_unitary(s);
        for (std::size_t f = 0; f < spec.size(); ++f) {
            const double mag = std::abs(spec[f]);
            if (mask[f]) {
                rep.maxInBandDeviation = std::max(rep.maxInBandDeviation, std::abs(mag - 1.0));
            } else {
                rep.maxOutOfBand = std::max(rep.maxOutOfBand, mag);
            }
        }
    }
    rep.passed = rep.maxOutOfBand < tol && rep.maxInBandDeviation < tol;
    return rep;
}

// Largest |theta| over delays p not a multiple of t, across all auto and cross
// profiles of the set, plus the largest |theta(0)| between distinct members.
struct SparsityReport {
    double maxOffGrid = 0.0;
    double maxZeroDelayCross = 0.0;
};

inline SparsityReport sparsity(const SequenceSet& set) {
    SparsityReport rep;
    const auto t = static_cast<std::size_t>(set.interlace.t());
    for (std::size_t x = 0; x < set.sequences.size(); ++x) {
        for (std::size_t y = 0; y < set.sequences.size(); ++y) {
            const auto prof = periodic_xcorr(set.sequences[x], set.sequences[y]);
            for (std::size_t p = 0; p < prof.length(); ++p) {
                if (p % t != 0) {
                    rep.maxOffGrid = std::max(rep.maxOffGrid, std::abs(prof[p]));
                }
            }
            if (x != y) {
                rep.maxZeroDelayCross = std::max(rep.maxZeroDelayCross, std::abs(prof[0]));
            }
        }
    }
    return rep;
}

struct CrossPairReport {
    std::size_t x = 0;
    std::size_t y = 0;
    double maxMagnitude = 0.0;
    std::vector<std::size_t> zeroDelays;
};

struct CrossSetReport {
    bool passed = false;
    double bound = 0.0;
    double maxMagnitude = 0.0;
    bool withinBound = false;
    // Only for s = 1: every |theta(p)| equals t.
    std::optional<bool> constantMagnitude;
    double maxDeviationFromBound = 0.0;
    std::size_t zeroDelayCount = 0;
    std::vector<CrossPairReport> pairs;
};

// Crosscorrelation between every member of setA and every member of setB,
// whose carriers come from two permutations of one family. The magnitude is
// bounded by t; for s = 1 it equals t at every delay.
inline CrossSetReport cross_set_check(const SequenceSet& setA, const SequenceSet& setB, std::int64_t s,
                                      double tol = 1e-9) {
    if (!(setA.interlace == setB.interlace)) {
        throw ValidationError("cross_set_check: sets were built on different interlaces");
    }
    CrossSetReport rep;
    const double t = static_cast<double>(setA.interlace.t());
    const double zero = tol * static_cast<double>(setA.interlace.l());
    rep.bound = t;
    if (s == 1) {
        rep.constantMagnitude = true;
    }
    for (std::size_t x = 0; x < setA.sequences.size(); ++x) {
        for (std::size_t y = 0; y < setB.sequences.size(); ++y) {
            const auto prof = periodic_xcorr(setA.sequences[x], setB.sequences[y]);
            CrossPairReport pair{x, y, 0.0, {}};
            for (std::size_t p = 0; p < prof.length(); ++p) {
                const double mag = std::abs(prof[p]);
                pair.maxMagnitude = std::max(pair.maxMagnitude, mag);
                rep.maxDeviationFromBound = std::max(rep.maxDeviationFromBound, std::abs(mag - t));
                if (mag < zero) {
                    pair.zeroDelays.push_back(p);
                }
                if (s == 1 && std::abs(mag - t) >= tol * t) {
                    rep.constantMagnitude = false;
                }
            }
            rep.zeroDelayCount += pair.zeroDelays.size();
            rep.maxMagnitude = std::max(rep.maxMagnitude, pair.maxMagnitude);
            rep.pairs.push_back(std::move(pair));
        }
    }
    rep.withinBound = rep.maxMagnitude <= t * (1.0 + tol);
    rep.passed = rep.withinBound && rep.constantMagnitude.value_or(true);
    return rep;
}

} // namespace zczseq
