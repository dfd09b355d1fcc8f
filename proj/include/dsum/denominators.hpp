#pragma once

/**
 * @file denominators.hpp
 * @brief Least denominators q(n) of S(m, n) = 12 s(m, n) over m coprime to n.
 *
 * Closed form: q(n) = q0(n) for odd n and 2^{v_2(n) - 1} q0(n) for even n,
 * where q0(n) is the (3 mod 4)-part of n.  The brute force minimizes the
 * reduced denominator of 12 s(m, n) directly.
 *
 * The mean value of f(n) = q(n)/n is predicted from Wirsing's theorem with
 * density nu = 1/2.  constant_C follows the stated asymptotic constant
 * 3 sqrt(2)/(8 pi) * prod_{p = 1 (4)} (1 - p^-2)^-1 * prod_{p = 3 (4)} (1 - p^-2)^-1/2,
 * whose 2-adic factor is taken as 3/4.  Summing f(2^a)/2^a directly gives 3/2
 * instead, so derived_mean_value_constant() rebuilds the constant from
 * Euler factors computed out of q_formula; with the recomputed factor it is
 * exactly 2 * constant_C.
 */

#include "dsum/compensated.hpp"
#include "dsum/core_arith.hpp"
#include "dsum/dedekind.hpp"
#include "dsum/sieve.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dsum {

struct FactorizationView {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (p, v_p(n)), p ascending

    std::uint64_t product() const {
        std::uint64_t r = 1;
        for (auto [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) r *= p;
        return r;
    }
};

inline FactorizationView factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    FactorizationView view{n, {}};
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) view.factors.emplace_back(p, e);
    }
    if (n > 1) view.factors.emplace_back(n, 1);
    return view;
}

/// Largest e with p^e | n.
inline unsigned vp(std::uint64_t p, std::uint64_t n) {
    if (p < 2) throw std::invalid_argument("vp: p must be prime");
    if (n == 0) throw std::invalid_argument("vp: n must be positive");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

inline std::uint64_t q0(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto [p, e] : factorize(n).factors)
        if (p % 4 == 3)
            for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

inline std::uint64_t q_formula(std::uint64_t n) {
    std::uint64_t r = q0(n);
    if (n % 2 == 0) r <<= (vp(2, n) - 1);
    return r;
}

/// min over m in (Z/nZ)* of the reduced denominator of 12 s(m, n).
inline std::uint64_t q_bruteforce(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("q_bruteforce: n must be positive");
    if (n == 1) return 1;
    const auto nn = static_cast<std::int64_t>(n);
    BigInt best = -1;
    for (std::int64_t m = 1; m < nn; ++m) {
        if (gcd(m, nn) != 1) continue;
        ExactRational S = dedekind_fast(m, nn) * ExactRational(12);
        if (best < 0 || S.denominator() < best) best = S.denominator();
        if (best == 1) break;
    }
    return best.convert_to<std::uint64_t>();
}

/// q(1..N) by sieving prime powers; entry 0 is unused and set to 0.
inline std::vector<std::uint64_t> q_table(std::uint32_t N) {
    std::vector<std::uint64_t> q(static_cast<std::size_t>(N) + 1, 1);
    q[0] = 0;
    // Each multiple of p^e (e >= 1) picks up one factor p, giving p^{v_p(n)}.
    // For p = 2 only e >= 2 contributes, giving 2^{v_2(n) - 1}.
    for (std::uint32_t p : primes_up_to(N)) {
        if (p % 4 == 1) continue;
        std::uint64_t pe = (p == 2) ? 4 : p;
        for (; pe <= N; pe *= p)
            for (std::uint64_t k = pe; k <= N; k += pe) q[k] *= p;
    }
    return q;
}

inline BigInt q_partial_sum(std::uint32_t N) {
    if (N < 1) throw std::invalid_argument("q_partial_sum: N must be positive");
    auto q = q_table(N);
    unsigned __int128 acc = 0;  // sum <= N^2 / 2, far inside 128 bits for 32-bit N
    for (std::size_t n = 1; n <= N; ++n) acc += q[n];
    BigInt r = static_cast<std::uint64_t>(acc >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(acc);
    return r;
}

struct ConstantC {
    double value = 0.0;
    double tail_error = 0.0;  ///< rigorous bound on C(infinity) - C(prime_limit)
    std::uint32_t prime_limit = 0;
};

namespace detail {

struct ResidueClassLogs {
    double log_q41 = 0.0;  // -sum_{p = 1 (4)} log(1 - p^-2)
    double log_q43 = 0.0;  // -sum_{p = 3 (4)} log(1 - p^-2)
    double log_mertens43 = 0.0;  // -sum_{p = 3 (4)} log(1 - p^-1)
};

inline ResidueClassLogs residue_class_logs(const std::vector<std::uint32_t>& primes, std::uint64_t limit) {
    CompensatedSum s41, s43, m43;
    for (std::uint32_t p : primes) {
        if (p > limit) break;
        double x = 1.0 / static_cast<double>(p);
        if (p % 4 == 1) {
            s41.add(-std::log1p(-x * x));
        } else if (p % 4 == 3) {
            s43.add(-std::log1p(-x * x));
            m43.add(-std::log1p(-x));
        }
    }
    return {s41.value(), s43.value(), m43.value()};
}

inline double tail_log_bound(std::uint64_t limit) {
    // sum_{p > L} -log(1 - p^-2) <= sum_{n > L} n^-2 / (1 - (L+1)^-2) < 1 / (L (1 - (L+1)^-2))
    double l = static_cast<double>(limit);
    return 1.0 / (l * (1.0 - 1.0 / ((l + 1) * (l + 1))));
}

}  // namespace detail

inline ConstantC constant_C_from_primes(const std::vector<std::uint32_t>& primes, std::uint32_t prime_limit) {
    if (prime_limit < 2) throw std::invalid_argument("constant_C: prime_limit must be >= 2");
    using boost::math::constants::pi;
    auto logs = detail::residue_class_logs(primes, prime_limit);
    double prefactor = 3.0 * std::sqrt(2.0) / (8.0 * pi<double>());
    double value = prefactor * std::exp(logs.log_q41 + 0.5 * logs.log_q43);
    double tail = value * std::expm1(detail::tail_log_bound(prime_limit));
    return {value, tail, prime_limit};
}

inline ConstantC constant_C(std::uint32_t prime_limit) {
    if (prime_limit < 2) throw std::invalid_argument("constant_C: prime_limit must be >= 2");
    return constant_C_from_primes(primes_up_to(prime_limit), prime_limit);
}

/// Partial Euler factor sum_{a=0}^{alpha_max} f(p^a)/p^a with f = q_formula(n)/n, exactly.
inline ExactRational euler_factor_partial(std::uint64_t p, unsigned alpha_max) {
    ExactRational total;
    std::uint64_t pa = 1;
    for (unsigned a = 0; a <= alpha_max; ++a) {
        ExactRational f(static_cast<std::int64_t>(q_formula(pa)), static_cast<std::int64_t>(pa));
        total += f / ExactRational(static_cast<std::int64_t>(pa));
        if (a < alpha_max) pa *= p;
    }
    return total;
}

/**
 * Full 2-adic Euler factor of f.  For a >= 1, f(2^a) = q(2^a)/2^a is the
 * constant c = f(2), so the series is 1 + c * sum_{a>=1} 2^-a = 1 + c.
 */
inline ExactRational two_adic_euler_factor() {
    ExactRational c(static_cast<std::int64_t>(q_formula(2)), 2);
    for (std::uint64_t a = 2, pa = 4; a <= 8; ++a, pa *= 2)
        if (ExactRational(static_cast<std::int64_t>(q_formula(pa)), static_cast<std::int64_t>(pa)) != c)
            throw std::logic_error("f(2^a) is not constant for a >= 1");
    return ExactRational(1) + c;
}

/// The 2-adic factor used by the stated asymptotic constant.
inline constexpr double kStatedTwoAdicFactor = 0.75;

/**
 * Mean-value constant of sum q(n) assembled from Euler factors:
 *   (1/2) * q2 * w41 * w43 / (e^{gamma/2} sqrt(pi)),
 *   w41 = prod_{p=1(4)} (1-p^-2)^-1,  w43 = (2 e^gamma / pi * prod_{p=3(4)} (1-p^-2)^-1)^{1/2}.
 * The leading 1/2 comes from partial summation.  With q2 = 3/4 this
 * reproduces constant_C; with two_adic_euler_factor() it is twice that.
 */
inline ConstantC derived_mean_value_constant(const std::vector<std::uint32_t>& primes, std::uint32_t prime_limit,
                                             double q2) {
    using boost::math::constants::euler;
    using boost::math::constants::pi;
    auto logs = detail::residue_class_logs(primes, prime_limit);
    const double g = euler<double>();
    double w41 = std::exp(logs.log_q41);
    double w43 = std::sqrt(2.0 * std::exp(g) / pi<double>() * std::exp(logs.log_q43));
    double value = 0.5 * q2 * w41 * w43 / (std::exp(g / 2) * std::sqrt(pi<double>()));
    return {value, value * std::expm1(detail::tail_log_bound(prime_limit)), prime_limit};
}

struct WirsingPrediction {
    std::uint64_t N = 0;
    double q2 = kStatedTwoAdicFactor;
    double q41 = 0.0;  ///< prod_{p<=N, p=1(4)} (1-p^-2)^-1
    double q43 = 0.0;  ///< prod_{p<=N, p=3(4)} (1-p^-1)^-1
    double leading = 0.0;  ///< 1 / (e^{gamma/2} Gamma(1/2)), Gamma(1/2) = sqrt(pi)
    double finite_form = 0.0;  ///< prediction for sum_{n<=N} q(n)/n
    double asymptotic_form = 0.0;  ///< C N^2 / sqrt(log N), prediction for sum_{n<=N} q(n)
};

inline WirsingPrediction wirsing_prediction(std::uint64_t N, double q2 = kStatedTwoAdicFactor,
                                            std::uint32_t prime_limit_for_C = 1000000) {
    if (N < 16) throw std::invalid_argument("wirsing_prediction: N < 16 is outside the asymptotic regime");
    using boost::math::constants::euler;
    using boost::math::constants::pi;
    std::uint32_t sieve_to = static_cast<std::uint32_t>(std::max<std::uint64_t>(N, prime_limit_for_C));
    auto primes = primes_up_to(sieve_to);
    auto logs = detail::residue_class_logs(primes, N);
    WirsingPrediction w;
    w.N = N;
    w.q2 = q2;
    w.q41 = std::exp(logs.log_q41);
    w.q43 = std::exp(logs.log_mertens43);
    w.leading = 1.0 / (std::exp(euler<double>() / 2) * std::sqrt(pi<double>()));
    double n = static_cast<double>(N);
    double logn = std::log(n);
    w.finite_form = w.leading * n / logn * w.q2 * w.q41 * w.q43;
    double c = derived_mean_value_constant(primes, prime_limit_for_C, q2).value;
    w.asymptotic_form = c * n * n / std::sqrt(logn);
    return w;
}

/// sum_{n<=N} q(n)/n with compensated accumulation.
inline double mean_of_f(std::uint32_t N) {
    auto q = q_table(N);
    CompensatedSum s;
    for (std::size_t n = 1; n <= N; ++n) s.add(static_cast<double>(q[n]) / static_cast<double>(n));
    return s.value();
}

struct MeanValueReport {
    std::uint32_t N = 0;
    BigInt direct_sum;
    double direct_sum_real = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    double C_value = 0.0;
    double C_tail_error = 0.0;
};

/// Compares sum_{n<=N} q(n) to C N^2 / sqrt(log N) for each N, with C supplied.
inline std::vector<MeanValueReport> mean_value_experiment(const std::vector<std::uint32_t>& N_list,
                                                          const ConstantC& C) {
    std::vector<MeanValueReport> out;
    std::uint32_t maxN = 0;
    for (auto N : N_list) {
        if (N < 2) throw std::invalid_argument("mean_value_experiment: each N must be >= 2");
        maxN = std::max(maxN, N);
    }
    if (N_list.empty()) return out;
    auto q = q_table(maxN);
    std::vector<unsigned __int128> prefix(static_cast<std::size_t>(maxN) + 1, 0);
    for (std::size_t n = 1; n <= maxN; ++n) prefix[n] = prefix[n - 1] + q[n];
    for (auto N : N_list) {
        MeanValueReport r;
        r.N = N;
        unsigned __int128 s = prefix[N];
        r.direct_sum = static_cast<std::uint64_t>(s >> 64);
        r.direct_sum <<= 64;
        r.direct_sum += static_cast<std::uint64_t>(s);
        r.direct_sum_real = r.direct_sum.convert_to<double>();
        double n = static_cast<double>(N);
        r.predicted = C.value * n * n / std::sqrt(std::log(n));
        r.ratio = r.direct_sum_real / r.predicted;
        r.C_value = C.value;
        r.C_tail_error = C.tail_error;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<MeanValueReport> mean_value_experiment(const std::vector<std::uint32_t>& N_list,
                                                          std::uint32_t prime_limit = 10000000) {
    return mean_value_experiment(N_list, constant_C(prime_limit));
}

}  // namespace dsum
