#pragma once

// Brute-force reference implementations.  These deliberately avoid the fast
// paths they are compared against: no reciprocity, no closed forms, no
// sorting, no sieves.  Used by the test suites and by `dsum selftest`.

#include "dsum/core_arith.hpp"
#include "dsum/data_tuple.hpp"
#include "dsum/expsums.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <vector>

namespace dsum::oracle {

/// s(m, n) = sum_{k mod n} ((k m / n)) ((k / n)) with ExactRational sawtooths.
inline ExactRational dedekind_by_definition(std::int64_t m, std::int64_t n) {
    ExactRational s;
    for (std::int64_t k = 0; k < n; ++k)
        s += sawtooth(ExactRational(k * m, n)) * sawtooth(ExactRational(k, n));
    return s;
}

inline std::int64_t mod_inverse_scan(std::int64_t m, std::int64_t n) {
    for (std::int64_t x = 1; x <= n; ++x)
        if ((static_cast<__int128>(m) * x - 1) % n == 0) return x;
    return 0;
}

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_smooth_trial(std::uint64_t n, std::uint64_t Q) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            if (d > Q) return false;
            n /= d;
        }
    return n == 1 || n <= Q;
}

/// q(n) from a trial-division factorization, independent of any sieve.
inline std::uint64_t q_by_factoring(std::uint64_t n) {
    std::uint64_t q = 1;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (p == 2 && e > 0)
            for (unsigned i = 1; i < e; ++i) q *= 2;
        else if (p % 4 == 3)
            for (unsigned i = 0; i < e; ++i) q *= p;
    }
    if (rest > 1 && rest % 4 == 3) q *= rest;
    return q;
}

/**
 * Discrepancy by scanning lambda candidates without sorting: every sample
 * point (closed count), its left limit (strict count), every i/J, lambda = 1,
 * and `extra_grid` uniformly spaced values.
 */
template <typename T>
double star_discrepancy_grid(const std::vector<T>& g, int extra_grid = 10000) {
    const double J = static_cast<double>(g.size());
    auto to_d = [](const T& x) {
        if constexpr (std::is_same_v<T, double>)
            return x;
        else
            return x.to_double();
    };
    double best = 0.0;
    auto eval_closed = [&](const T& lam) {
        std::size_t c = 0;
        for (const auto& x : g)
            if (x <= lam) ++c;
        return std::abs(static_cast<double>(c) - to_d(lam) * J);
    };
    for (const auto& p : g) {
        best = std::max(best, eval_closed(p));
        std::size_t strict = 0;
        for (const auto& x : g)
            if (x < p) ++strict;
        best = std::max(best, std::abs(static_cast<double>(strict) - to_d(p) * J));
    }
    for (std::size_t i = 0; i <= g.size(); ++i)
        best = std::max(best, eval_closed(T(static_cast<std::int64_t>(i)) / T(static_cast<std::int64_t>(std::max<std::size_t>(g.size(), 1)))));
    for (int i = 0; i <= extra_grid; ++i) {
        double lam = static_cast<double>(i) / extra_grid;
        std::size_t c = 0;
        for (const auto& x : g)
            if (to_d(x) <= lam) ++c;
        best = std::max(best, std::abs(static_cast<double>(c) - lam * J));
    }
    return best;
}

/// Exact supremum by enumerating, without sorting, the closed count and the
/// left-limit count at every sample point (plus lambda = 1).  O(J^2).
template <typename T>
T star_discrepancy_candidates(const std::vector<T>& g) {
    const T J = T(static_cast<std::int64_t>(g.size()));
    T best = T(0);
    auto consider = [&](const T& v) {
        T a = v < T(0) ? T(-v) : v;
        if (a > best) best = a;
    };
    for (const auto& p : g) {
        std::int64_t closed = 0, strict = 0;
        for (const auto& x : g) {
            if (x <= p) ++closed;
            if (x < p) ++strict;
        }
        consider(T(closed) - p * J);
        consider(T(strict) - p * J);
    }
    return best;  // lambda = 1 contributes |J - J| = 0
}

inline Complex window_sum_direct(std::int64_t M, std::int64_t c, std::int64_t K, std::int64_t L) {
    Complex s = 0.0;
    for (std::int64_t k = K + 1; k <= K + L; ++k) {
        double t = 2.0 * M_PI * static_cast<double>(c) * static_cast<double>(k) / static_cast<double>(M);
        s += Complex(std::cos(t), std::sin(t));
    }
    return s;
}

/// (1/M) sum_{c=0}^{M-1} sum_{K<k<=K+L} e_M(c (k - m)), evaluated term by term.
inline Complex window_indicator(std::int64_t M, std::int64_t K, std::int64_t L, std::int64_t m) {
    Complex s = 0.0;
    for (std::int64_t c = 0; c < M; ++c)
        for (std::int64_t k = K + 1; k <= K + L; ++k) {
            double t = 2.0 * M_PI * static_cast<double>(c * (k - m)) / static_cast<double>(M);
            s += Complex(std::cos(t), std::sin(t));
        }
    return s / static_cast<double>(M);
}

/// Qualifying pairs by a full double loop over setM x setN.
inline std::uint64_t count_pairs_double_loop(const DataTuple& D) {
    std::uint64_t c = 0;
    for (std::size_t j = 0; j < D.setN.size(); ++j)
        for (auto m : D.setM)
            if (D.windows[j].contains(m) && std::gcd(m, D.setN[j]) == 1) ++c;
    return c;
}

/// sum of e(b m* / n) over qualifying pairs, inverse by scanning.
inline Complex S0_direct(const DataTuple& D, std::int64_t b) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < D.setN.size(); ++j) {
        const std::int64_t n = D.setN[j];
        for (auto m : D.setM) {
            if (!D.windows[j].contains(m) || std::gcd(m, n) != 1) continue;
            std::int64_t inv = mod_inverse_scan(m % n, n);
            double t = 2.0 * M_PI * static_cast<double>((b % n + n) % n * inv % n) / static_cast<double>(n);
            s += Complex(std::cos(t), std::sin(t));
        }
    }
    return s;
}

}  // namespace dsum::oracle
