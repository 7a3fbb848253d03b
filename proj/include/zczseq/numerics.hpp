#pragma once

// Complex sequence container, exact roots of unity, and the two DFT
// normalizations used throughout the library:
//
//   classic:  X'(f) = sum_k x'(k) W_N^{fk},          x'(k) = (1/N) sum_f X'(f) W_N^{-kf}
//   unitary:  X(f)  = (1/sqrt N) sum_k x(k) W_N^{fk}, x(k)  = (1/sqrt N) sum_f X(f) W_N^{-kf}
//
// with W_N = exp(-j 2 pi / N). The transforms are the direct O(N^2) sums.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zczseq/errors.hpp"

namespace zczseq {

using Complex = std::complex<double>;

// Non-negative remainder of a modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// (a * b) mod m without intermediate overflow for |a|, |b| < m < 2^62.
constexpr std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) noexcept {
    return static_cast<std::int64_t>(
        (static_cast<__int128>(mod_floor(a, m)) * static_cast<__int128>(mod_floor(b, m))) % m);
}

// Finite, non-empty sequence of complex samples.
class ComplexSeq {
public:
    using value_type = Complex;
    using const_iterator = std::vector<Complex>::const_iterator;

    explicit ComplexSeq(std::vector<Complex> samples) : samples_(std::move(samples)) { validate(); }
    ComplexSeq(std::initializer_list<Complex> samples) : samples_(samples) { validate(); }

    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t k) const noexcept { return samples_[k]; }
    [[nodiscard]] const_iterator begin() const noexcept { return samples_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return samples_.end(); }
    [[nodiscard]] std::span<const Complex> span() const noexcept { return samples_; }
    [[nodiscard]] const std::vector<Complex>& samples() const noexcept { return samples_; }

    friend bool operator==(const ComplexSeq&, const ComplexSeq&) = default;

private:
    void validate() const {
        if (samples_.empty()) {
            throw ValidationError("ComplexSeq: length must be at least 1");
        }
        for (std::size_t k = 0; k < samples_.size(); ++k) {
            if (!std::isfinite(samples_[k].real()) || !std::isfinite(samples_[k].imag())) {
                throw ValidationError("ComplexSeq: sample " + std::to_string(k) + " is not finite");
            }
        }
    }

    std::vector<Complex> samples_;
};

// exp(-j 2 pi numerator / modulus), numerator kept reduced mod modulus.
class PhaseExponent {
public:
    PhaseExponent(std::int64_t numerator, std::int64_t modulus) : modulus_(modulus) {
        if (modulus < 1) {
            throw ValidationError("PhaseExponent: modulus must be >= 1");
        }
        numerator_ = mod_floor(numerator, modulus);
    }

    [[nodiscard]] std::int64_t numerator() const noexcept { return numerator_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return modulus_; }

    friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;

private:
    std::int64_t numerator_ = 0;
    std::int64_t modulus_ = 1;
};

// W_modulus^numerator. Quarter-turn multiples are returned exactly.
inline Complex unit_root(const PhaseExponent& e) {
    const std::int64_t n = e.numerator();
    const std::int64_t m = e.modulus();
    if ((4 * static_cast<__int128>(n)) % m == 0) {
        switch (static_cast<int>((4 * static_cast<__int128>(n)) / m)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, 1.0};
        }
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

inline Complex unit_root(std::int64_t numerator, std::int64_t modulus) {
    return unit_root(PhaseExponent(numerator, modulus));
}

// Lookup table of W_N^m for m = 0..N-1; index with any integer exponent.
class RootTable {
public:
    explicit RootTable(std::int64_t order) : order_(order) {
        if (order < 1) {
            throw ValidationError("RootTable: order must be >= 1");
        }
        roots_.reserve(static_cast<std::size_t>(order));
        for (std::int64_t m = 0; m < order; ++m) {
            roots_.push_back(unit_root(PhaseExponent(m, order)));
        }
    }

    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] const Complex& operator()(std::int64_t exponent) const noexcept {
        return roots_[static_cast<std::size_t>(mod_floor(exponent, order_))];
    }

private:
    std::int64_t order_;
    std::vector<Complex> roots_;
};

namespace detail {

// sum_k x(k) W_N^{sign * f k}, scaled. Left-to-right accumulation.
inline ComplexSeq direct_transform(const ComplexSeq& x, int sign, double scale) {
    const auto n = static_cast<std::int64_t>(x.size());
    const RootTable w(n);
    std::vector<Complex> out(x.size());
    for (std::int64_t f = 0; f < n; ++f) {
        Complex acc{0.0, 0.0};
        for (std::int64_t k = 0; k < n; ++k) {
            acc += x[static_cast<std::size_t>(k)] * w(sign * ((f * k) % n));
        }
        out[static_cast<std::size_t>(f)] = acc * scale;
    }
    return ComplexSeq(std::move(out));
}

} // namespace detail

inline ComplexSeq dft_classic(const ComplexSeq& x) {
    return detail::direct_transform(x, +1, 1.0);
}

inline ComplexSeq idft_classic(const ComplexSeq& spectrum) {
    return detail::direct_transform(spectrum, -1, 1.0 / static_cast<double>(spectrum.size()));
}

inline ComplexSeq dft_unitary(const ComplexSeq& x) {
    return detail::direct_transform(x, +1, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

inline ComplexSeq idft_unitary(const ComplexSeq& spectrum) {
    return detail::direct_transform(spectrum, -1, 1.0 / std::sqrt(static_cast<double>(spectrum.size())));
}

inline double energy(const ComplexSeq& x) noexcept {
    double acc = 0.0;
    for (const auto& v : x) {
        acc += std::norm(v);
    }
    return acc;
}

inline double max_abs(const ComplexSeq& x) noexcept {
    double m = 0.0;
    for (const auto& v : x) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Largest elementwise |a(k) - b(k)|; sequences must have equal length.
inline double max_abs_diff(const ComplexSeq& a, const ComplexSeq& b) {
    if (a.size() != b.size()) {
        throw ValidationError("max_abs_diff: length mismatch");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

constexpr std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept {
    return std::gcd(a, b);
}

constexpr bool is_prime(std::int64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

} // namespace zczseq
