#pragma once

// Periodic correlation engine, zone measurement and PAPR.
//
// theta_xy(p) = sum_k x(k) conj(y((k + p) mod N)),  p = 0..N-1.
// The negative-delay branch theta_xy(-p) = conj(theta_yx(p)) is the same
// number as theta_xy(N - p), so a profile stores the N cyclic delays only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zczseq/numerics.hpp"

namespace zczseq {

enum class CorrelationKind { Auto, Cross };

struct CorrelationProfile {
    std::vector<Complex> values;
    CorrelationKind kind = CorrelationKind::Cross;
    // Level against which "zero" is judged: E_x for auto, sqrt(E_x E_y) for cross.
    double reference = 0.0;

    [[nodiscard]] std::size_t length() const noexcept { return values.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t p) const noexcept { return values[p]; }
};

inline CorrelationProfile periodic_xcorr(const ComplexSeq& x, const ComplexSeq& y) {
    if (x.size() != y.size()) {
        throw ValidationError("periodic_xcorr: sequences have different lengths");
    }
    const std::size_t n = x.size();
    CorrelationProfile out;
    out.kind = CorrelationKind::Cross;
    out.reference = std::sqrt(energy(x) * energy(y));
    out.values.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            acc += x[k] * std::conj(y[(k + p) % n]);
        }
        out.values[p] = acc;
    }
    return out;
}

inline CorrelationProfile periodic_acorr(const ComplexSeq& x) {
    auto out = periodic_xcorr(x, x);
    out.kind = CorrelationKind::Auto;
    out.reference = energy(x);
    return out;
}

// Same profile computed from unitary DFT sequences:
// theta_xy(p) = sum_f X(f) conj(Y(f)) W_N^{pf}.
inline CorrelationProfile periodic_xcorr_freq(const ComplexSeq& xs, const ComplexSeq& ys) {
    if (xs.size() != ys.size()) {
        throw ValidationError("periodic_xcorr_freq: spectra have different lengths");
    }
    const auto n = static_cast<std::int64_t>(xs.size());
    const RootTable w(n);
    CorrelationProfile out;
    out.kind = CorrelationKind::Cross;
    out.reference = std::sqrt(energy(xs) * energy(ys));
    out.values.resize(xs.size());
    for (std::int64_t p = 0; p < n; ++p) {
        Complex acc{0.0, 0.0};
        for (std::int64_t f = 0; f < n; ++f) {
            const auto fi = static_cast<std::size_t>(f);
            acc += xs[fi] * std::conj(ys[fi]) * w((p * f) % n);
        }
        out.values[static_cast<std::size_t>(p)] = acc;
    }
    return out;
}

inline CorrelationProfile periodic_acorr_freq(const ComplexSeq& xs) {
    auto out = periodic_xcorr_freq(xs, xs);
    out.kind = CorrelationKind::Auto;
    out.reference = energy(xs);
    return out;
}

struct ZeroRun {
    std::size_t start = 0;
    std::size_t length = 0;
    friend bool operator==(const ZeroRun&, const ZeroRun&) = default;
};

struct ZoneReport {
    CorrelationKind kind = CorrelationKind::Auto;
    // D_ZAZ for auto, D_ZCCZ for cross. Empty for a cross profile that is
    // already nonzero at zero delay.
    std::optional<std::size_t> zoneLength;
    // Largest |theta| at the delay pair that ends the zone (0 when the zone spans everything).
    double edgeMagnitude = 0.0;
    double threshold = 0.0;
    std::vector<std::size_t> nonzeroDelays;
    // Auto: largest |theta(p)| over p != 0. Cross: over all p.
    double maxNonzeroMagnitude = 0.0;
    std::vector<ZeroRun> zeroRuns;
};

inline ZoneReport measure_zones(const CorrelationProfile& profile, double zeroTol = 1e-9) {
    const std::size_t n = profile.length();
    ZoneReport rep;
    rep.kind = profile.kind;
    rep.threshold = zeroTol * profile.reference;
    const auto is_zero = [&](std::size_t p) { return std::abs(profile.values[p]) < rep.threshold; };

    for (std::size_t p = 0; p < n; ++p) {
        if (!is_zero(p)) {
            rep.nonzeroDelays.push_back(p);
        }
        if (p != 0 || profile.kind == CorrelationKind::Cross) {
            rep.maxNonzeroMagnitude = std::max(rep.maxNonzeroMagnitude, std::abs(profile.values[p]));
        }
    }

    for (std::size_t p = 0; p < n;) {
        if (!is_zero(p)) {
            ++p;
            continue;
        }
        ZeroRun run{p, 0};
        while (p < n && is_zero(p)) {
            ++run.length;
            ++p;
        }
        rep.zeroRuns.push_back(run);
    }

    if (profile.kind == CorrelationKind::Cross && !is_zero(0)) {
        rep.edgeMagnitude = std::abs(profile.values[0]);
        return rep;
    }
    std::size_t zone = 0;
    for (std::size_t d = 1; d < n; ++d) {
        if (is_zero(d) && is_zero(n - d)) {
            zone = d;
            continue;
        }
        rep.edgeMagnitude = std::max(std::abs(profile.values[d]), std::abs(profile.values[n - d]));
        break;
    }
    rep.zoneLength = zone;
    return rep;
}

// Delay -> value for every delay whose magnitude reaches the zero threshold.
inline std::vector<std::pair<std::size_t, Complex>> sparse_view(const CorrelationProfile& profile,
                                                                double zeroTol = 1e-9) {
    const double threshold = zeroTol * profile.reference;
    std::vector<std::pair<std::size_t, Complex>> out;
    for (std::size_t p = 0; p < profile.length(); ++p) {
        if (std::abs(profile.values[p]) >= threshold) {
            out.emplace_back(p, profile.values[p]);
        }
    }
    return out;
}

// Upper bound floor(N/M) - 1 on the ZCZ length of M sequences of length N.
inline std::int64_t zcz_bound(std::int64_t n, std::int64_t m) {
    if (m < 1) {
        throw ValidationError("zcz_bound: set size M must be >= 1");
    }
    if (n < 1) {
        throw ValidationError("zcz_bound: length N must be >= 1");
    }
    return n / m - 1;
}

struct PaprReport {
    double peakPower = 0.0;
    double meanPower = 0.0;
    double paprDb = 0.0;
    double magnitudeSpread = 0.0;
};

inline PaprReport papr(const ComplexSeq& x) {
    PaprReport rep;
    double minMag = std::abs(x[0]);
    double maxMag = minMag;
    for (const auto& v : x) {
        const double mag = std::abs(v);
        minMag = std::min(minMag, mag);
        maxMag = std::max(maxMag, mag);
        rep.peakPower = std::max(rep.peakPower, std::norm(v));
    }
    rep.meanPower = energy(x) / static_cast<double>(x.size());
    rep.magnitudeSpread = maxMag - minMag;
    // An all-zero sequence has a constant envelope. Rounding in the mean can
    // put it a hair above the peak, so the ratio is clamped at 0 dB.
    rep.paprDb = rep.meanPower > 0.0
        ? std::max(0.0, 10.0 * std::log10(rep.peakPower / rep.meanPower))
        : 0.0;
    return rep;
}

} // namespace zczseq
