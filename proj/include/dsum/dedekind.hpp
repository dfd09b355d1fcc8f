#pragma once

/**
 * @file dedekind.hpp
 * @brief Dedekind sums s(m, n), their 12-fold S(m, n), and fractional parts.
 *
 * Two independent evaluators are provided: the O(n) defining sum
 * (dedekind_naive) and the O(log n) reciprocity descent (dedekind_fast).
 * Fractional parts of S(m, n) = 12 s(m, n) have the closed form
 * {(m + m*) / n} where m* is the inverse of m modulo n in [1, n].
 */

#include "dsum/core_arith.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsum {

/// At least 30 significant decimal digits are needed for {rho s} with irrational rho.
using HighReal = boost::multiprecision::cpp_bin_float_50;

namespace detail {

inline void require_coprime(std::int64_t m, std::int64_t n) {
    if (n < 1 || m < 1) throw std::invalid_argument("Dedekind sum needs positive arguments");
    if (gcd(m, n) != 1)
        throw not_coprime_error("Dedekind sum requires coprimality: gcd(" + std::to_string(m) + ", " +
                                std::to_string(n) + ") != 1");
}

}  // namespace detail

/// s(m, n) = sum_{k=1}^{n-1} ((km/n)) ((k/n)), summed term by term.
inline ExactRational dedekind_naive(std::int64_t m, std::int64_t n) {
    detail::require_coprime(m, n);
    if (n == 1) return {};
    // ((j/n)) = (2 (j mod n) - n) / (2n) for j not divisible by n, so every
    // term shares the denominator 4n^2.  k*m is never divisible by n here.
    const __int128 nn = n;
    const __int128 mm = m % n;
    __int128 acc = 0;
    for (__int128 k = 1; k < nn; ++k) {
        __int128 r = (k * mm) % nn;
        acc += (2 * r - nn) * (2 * k - nn);
    }
    auto to_big = [](__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        BigInt b = static_cast<std::uint64_t>(u >> 64);
        b <<= 64;
        b += static_cast<std::uint64_t>(u);
        return neg ? BigInt(-b) : b;
    };
    return {to_big(acc), BigInt(4) * n * n};
}

/**
 * s(m, n) by Euclidean descent on the reciprocity law
 *   s(a, b) + s(b, a) = (a^2 + b^2 + 1) / (12ab) - 1/4,
 * stopping at s(1, b) = (b - 1)(b - 2) / (12b).
 */
inline ExactRational dedekind_fast(std::int64_t m, std::int64_t n) {
    detail::require_coprime(m, n);
    BigInt a = m % n;
    BigInt b = n;
    // Accumulate sum of +-terms as a single fraction num/den; reduced once at the end.
    BigInt num = 0;
    BigInt den = 1;
    int sign = 1;
    auto add_term = [&](const BigInt& tn, const BigInt& td) {
        if (sign > 0)
            num = num * td + tn * den;
        else
            num = num * td - tn * den;
        den *= td;
        BigInt g = boost::multiprecision::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    };
    while (b > 1) {
        if (a == 1) {
            add_term((b - 1) * (b - 2), 12 * b);
            break;
        }
        // (a^2 + b^2 + 1)/(12ab) - 1/4 = (a^2 + b^2 + 1 - 3ab) / (12ab)
        add_term(a * a + b * b + 1 - 3 * a * b, 12 * a * b);
        sign = -sign;
        BigInt r = b % a;
        b = a;
        a = r;
    }
    return {num, den};
}

/// Dedekind sum of a coprime pair with both the value s and S = 12 s.
struct DedekindValue {
    std::int64_t m = 1;
    std::int64_t n = 1;
    ExactRational s;
    ExactRational S;
};

inline DedekindValue dedekind_value(std::int64_t m, std::int64_t n) {
    ExactRational s = dedekind_fast(m, n);
    ExactRational S = s * ExactRational(12);
    return {m, n, std::move(s), std::move(S)};
}

/// {S(m, n)} computed as {(m + m*) / n}, without evaluating s(m, n).
inline ExactRational hickerson_frac(std::int64_t m, std::int64_t n) {
    detail::require_coprime(m, n);
    Residue inv = mod_inverse(m, n);
    std::int64_t num = (m % n + inv.value) % n;
    return {num, n};
}

inline HighReal to_high(const ExactRational& x) {
    return HighReal(x.numerator()) / HighReal(x.denominator());
}

/// x - floor(x) in [0, 1).
inline HighReal frac(const HighReal& x) {
    HighReal f = x - boost::multiprecision::floor(x);
    if (f >= 1) f = 0;
    if (f < 0) f = 0;
    return f;
}

/**
 * A nonzero real multiplier rho.  Rational values (integers, a/b, finite
 * decimals) are kept exactly; "pi", "e" and "sqrt:<rational>" are held to
 * 50 significant digits.
 */
class Rho {
    std::optional<ExactRational> exact_;
    HighReal value_;
    std::string label_;

public:
    explicit Rho(ExactRational q) : exact_(q), value_(to_high(q)), label_(q.to_string()) {
        if (q.is_zero()) throw std::invalid_argument("rho must be nonzero");
    }
    Rho(std::int64_t q) : Rho(ExactRational(q)) {}  // NOLINT

    static Rho parse(std::string_view text) {
        using boost::multiprecision::sqrt;
        std::string t(text);
        if (t == "pi" || t == "e" || t.rfind("sqrt:", 0) == 0) {
            Rho r(ExactRational(1));
            r.exact_.reset();
            r.label_ = t;
            if (t == "pi") {
                r.value_ = boost::math::constants::pi<HighReal>();
            } else if (t == "e") {
                r.value_ = boost::math::constants::e<HighReal>();
            } else {
                ExactRational q = ExactRational::parse(t.substr(5));
                if (q <= ExactRational(0)) throw std::invalid_argument("sqrt: needs a positive rational");
                HighReal root = sqrt(to_high(q));
                // Perfect squares stay exact.
                ExactRational back = ExactRational::parse(root.str(0, std::ios_base::fixed));
                if (back * back == q) return Rho(back);
                r.value_ = root;
            }
            return r;
        }
        return Rho(ExactRational::parse(text));
    }

    bool is_rational() const { return exact_.has_value(); }
    const ExactRational& exact() const { return *exact_; }
    const HighReal& value() const { return value_; }
    const std::string& label() const { return label_; }
};

/// {rho s(m, n)} exactly, for rational rho.
inline ExactRational frac_rho_s_exact(const ExactRational& rho, std::int64_t m, std::int64_t n) {
    if (rho.is_zero()) throw std::invalid_argument("rho must be nonzero");
    if (rho == ExactRational(12)) return hickerson_frac(m, n);
    return frac(rho * dedekind_fast(m, n));
}

/// {rho s(m, n)} in extended precision.  Rational rho goes through the exact path.
inline HighReal frac_rho_s(const Rho& rho, std::int64_t m, std::int64_t n) {
    if (rho.is_rational()) return to_high(frac_rho_s_exact(rho.exact(), m, n));
    ExactRational s = dedekind_fast(m, n);
    return frac(rho.value() * to_high(s));
}

}  // namespace dsum
