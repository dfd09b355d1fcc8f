#pragma once

/**
 * @file core_arith.hpp
 * @brief Exact integer and rational primitives.
 *
 * ExactRational is always stored in lowest terms with a positive
 * denominator, and zero is 0/1.  Integers are arbitrary precision
 * (Boost.Multiprecision cpp_int) since naive Dedekind sums carry
 * denominators of order 4n^2 and their numerators grow accordingly.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsum {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an operation needs gcd(m, n) = 1 and does not get it.
class not_coprime_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename Int>
constexpr Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Floor division for signed integers (rounds toward -infinity).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Least nonnegative residue of a modulo n (n > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

/// An inverse m* of m modulo n, normalized so that 1 <= value <= modulus.
struct Residue {
    std::int64_t value = 1;
    std::int64_t modulus = 1;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Extended Euclid.  For n = 1 every m is invertible and the result is 1.
inline Residue mod_inverse(std::int64_t m, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    std::int64_t a = mod_floor(m, n);
    std::int64_t b = n;
    std::int64_t x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (a != 1 && n != 1)
        throw not_coprime_error("mod_inverse: not invertible (gcd(" + std::to_string(m) + ", " +
                                std::to_string(n) + ") = " + std::to_string(a) + ")");
    std::int64_t v = mod_floor(x0, n);
    return {v == 0 ? n : v, n};
}

class ExactRational {
    BigInt num_{0};
    BigInt den_{1};

    void reduce() {
        if (den_ == 0) throw std::domain_error("ExactRational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    struct unreduced_tag {};
    ExactRational(BigInt n, BigInt d, unreduced_tag) : num_(std::move(n)), den_(std::move(d)) {}

public:
    ExactRational() = default;
    ExactRational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
    ExactRational(BigInt n) : num_(std::move(n)) {}  // NOLINT
    ExactRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    ExactRational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// Greatest integer <= *this.
    BigInt floor() const {
        BigInt q = num_ / den_;  // truncates toward zero
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    double to_double() const { return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>(); }

    std::string to_string() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "a", "-a/b" or a finite decimal such as "0.75" or "-1.5".
    static ExactRational parse(std::string_view text);

    ExactRational operator-() const { return {-num_, den_, unreduced_tag{}}; }

    friend ExactRational operator+(const ExactRational& x, const ExactRational& y) {
        if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend ExactRational operator-(const ExactRational& x, const ExactRational& y) { return x + (-y); }
    friend ExactRational operator*(const ExactRational& x, const ExactRational& y) {
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend ExactRational operator/(const ExactRational& x, const ExactRational& y) {
        if (y.num_ == 0) throw std::domain_error("ExactRational: division by zero");
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    ExactRational& operator+=(const ExactRational& y) { return *this = *this + y; }
    ExactRational& operator-=(const ExactRational& y) { return *this = *this - y; }
    ExactRational& operator*=(const ExactRational& y) { return *this = *this * y; }

    friend bool operator==(const ExactRational& x, const ExactRational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend std::strong_ordering operator<=>(const ExactRational& x, const ExactRational& y) {
        BigInt l = x.num_ * y.den_;
        BigInt r = y.num_ * x.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactRational& x) { return os << x.to_string(); }
};

inline ExactRational ExactRational::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    auto parse_int = [&](std::string_view s) {
        std::string_view digits = s;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty()) throw fail();
        for (char c : digits)
            if (c < '0' || c > '9') throw fail();
        BigInt v{std::string(digits)};
        return s.front() == '-' ? BigInt(-v) : v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt d = parse_int(text.substr(slash + 1));
        if (d == 0) throw fail();
        return {parse_int(text.substr(0, slash)), d};
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac_digits = text.substr(dot + 1);
        std::string whole(text.substr(0, dot));
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        BigInt scale = 1;
        for (char c : frac_digits) {
            if (c < '0' || c > '9') throw fail();
            scale *= 10;
        }
        BigInt w = parse_int(whole);
        BigInt f = frac_digits.empty() ? BigInt(0) : BigInt(std::string(frac_digits));
        bool negative = text.front() == '-';
        return {negative ? BigInt(w * scale - f) : BigInt(w * scale + f), scale};
    }
    return {parse_int(text), BigInt(1)};
}

/// x - floor(x), always in [0, 1).
inline ExactRational frac(const ExactRational& x) {
    return {BigInt(x.numerator() - x.floor() * x.denominator()), x.denominator()};
}

/// The Dedekind sawtooth ((x)): x - floor(x) - 1/2 off the integers, 0 on them.
inline ExactRational sawtooth(const ExactRational& x) {
    if (x.is_integer()) return {};
    return frac(x) - ExactRational(1, 2);
}

}  // namespace dsum
