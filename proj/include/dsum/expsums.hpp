#pragma once

/**
 * @file expsums.hpp
 * @brief Exponential sums with Kloosterman fractions b m* / n.
 *
 * Everything here is evaluated directly in double precision with
 * compensated, block-deterministic accumulation.  The *_rhs evaluators set
 * every implied constant to 1 and every N^{o(1)} to 1; they exist so that
 * measured/bound ratios can be reported, not asserted.
 */

#include "dsum/compensated.hpp"
#include "dsum/core_arith.hpp"
#include "dsum/data_tuple.hpp"
#include "dsum/generators.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dsum {

using Complex = std::complex<double>;

namespace detail {

/// e(r / k) for 0 <= r < k, exact at multiples of a quarter turn.
inline Complex unit_root(std::int64_t r, std::int64_t k) {
    if ((4 * static_cast<__int128>(r)) % k == 0) {
        switch (static_cast<int>((4 * static_cast<__int128>(r)) / k)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    // Use the representative in (-k/2, k/2] so the angle stays small.
    std::int64_t s = (2 * r > k) ? r - k : r;
    double angle = 2.0 * boost::math::constants::pi<double>() * static_cast<double>(s) / static_cast<double>(k);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// e(t) = exp(2 pi i t).
inline Complex e_frac(double t) {
    double f = t - std::floor(t);
    double q = 4.0 * f;
    if (q == std::floor(q)) return detail::unit_root(static_cast<std::int64_t>(q), 4);
    double s = f > 0.5 ? f - 1.0 : f;
    double angle = 2.0 * boost::math::constants::pi<double>() * s;
    return {std::cos(angle), std::sin(angle)};
}

/// e_k(t) = exp(2 pi i t / k), reduced modulo k first.
inline Complex e_k(std::int64_t k, std::int64_t t) {
    if (k < 1) throw std::invalid_argument("e_k: k must be positive");
    return detail::unit_root(mod_floor(t, k), k);
}

/// Complex weights beta_n for n in (N, 2N]; weights[i] belongs to n = N + 1 + i.
struct WeightSeq {
    std::int64_t N = 1;
    std::vector<Complex> weights;

    static WeightSeq ones(std::int64_t N) { return {N, std::vector<Complex>(static_cast<std::size_t>(N), 1.0)}; }

    /// Unit-modulus weights e(u_n) with u_n drawn from SplitMix64(seed).
    static WeightSeq random_unit(std::int64_t N, std::uint64_t seed) {
        SplitMix64 rng(seed);
        WeightSeq w{N, {}};
        w.weights.reserve(static_cast<std::size_t>(N));
        for (std::int64_t i = 0; i < N; ++i) w.weights.push_back(e_frac(rng.next_unit()));
        return w;
    }

    Complex at(std::int64_t n) const {
        if (n <= N || n > 2 * N) return 0.0;
        return weights[static_cast<std::size_t>(n - N - 1)];
    }

    double norm_sq() const {
        CompensatedSum s;
        for (const auto& b : weights) s.add(std::norm(b));
        return s.value();
    }
};

struct ExpSumResult {
    Complex value{};
    std::uint64_t terms_counted = 0;
    double bound_rhs = 0.0;
    double ratio = 0.0;  ///< |value| / bound_rhs, or 0 when bound_rhs = 0
};

namespace detail {

inline void finish(ExpSumResult& r) { r.ratio = r.bound_rhs > 0 ? std::abs(r.value) / r.bound_rhs : 0.0; }

struct SumAndCount {
    CompensatedComplexSum sum;
    std::uint64_t count = 0;
};

inline void combine(SumAndCount& total, const SumAndCount& part) {
    total.sum.add(part.sum);
    total.count += part.count;
}

}  // namespace detail

/// General four-term right-hand side, constant 1 and o(1) = 0.
inline double lemma2_general_rhs(double M, double N, double b, double beta_norm_sq) {
    return beta_norm_sq * std::sqrt(b / (M * N) + 1.0) *
           (M * std::pow(N, 0.75) + std::pow(N, 1.75) + std::pow(M, 1.2) * std::pow(N, 0.7) +
            std::pow(M, 0.6) * std::pow(N, 1.3));
}

/// Two-term simplification valid for M <= N^{1+o(1)}.
inline double lemma2_rhs(double M, double N, double b, double beta_norm_sq) {
    return beta_norm_sq * std::sqrt(b / (M * N) + 1.0) * (std::pow(N, 1.75) + std::pow(M, 0.6) * std::pow(N, 1.3));
}

/**
 * C(M, N; beta, b) = sum_{m ~ M} | sum_{n ~ N, gcd(n, m) = 1} beta_n e(b m*_n / n) |^2,
 * with m*_n the inverse of m modulo n in [1, n].  The bound is lemma2_rhs.
 */
inline ExpSumResult big_C(std::int64_t M, std::int64_t N, const WeightSeq& beta, std::int64_t b,
                          const ParallelConfig& cfg = {}) {
    if (b < 1) throw std::invalid_argument("big_C: b must be a positive integer");
    if (M < 1 || N < 1) throw std::invalid_argument("big_C: M and N must be positive");
    if (beta.N != N) throw std::invalid_argument("big_C: weights must be indexed over (N, 2N]");
    struct Part {
        CompensatedSum sum;
        std::uint64_t count = 0;
    };
    auto block = [&](std::size_t lo, std::size_t hi) {
        Part p;
        for (std::size_t i = lo; i < hi; ++i) {
            std::int64_t m = M + 1 + static_cast<std::int64_t>(i);
            CompensatedComplexSum inner;
            for (std::int64_t n = N + 1; n <= 2 * N; ++n) {
                if (gcd(m, n) != 1) continue;
                std::int64_t inv = mod_inverse(m, n).value;
                auto r = static_cast<std::int64_t>((static_cast<__int128>(b % n) * inv) % n);
                inner.add(beta.at(n) * e_k(n, r));
                ++p.count;
            }
            p.sum.add(std::norm(inner.value()));
        }
        return p;
    };
    Part total = blocked_reduce<Part>(
        static_cast<std::size_t>(M), cfg, block, [](Part& t, const Part& p) {
            t.sum.add(p.sum);
            t.count += p.count;
        });
    ExpSumResult r;
    r.value = total.sum.value();
    r.terms_counted = total.count;
    r.bound_rhs = lemma2_rhs(static_cast<double>(M), static_cast<double>(N), static_cast<double>(b), beta.norm_sq());
    detail::finish(r);
    return r;
}

/// |M|^{1/2} |N|^{1/2} (|b|/(MN) + 1)^{1/4} (N^{7/8} + M^{3/10} N^{13/20}) + |a| J M / N.
inline double lemma7_rhs(double card_setM, double card_setN, double M, double N, double a, double b, double J) {
    return std::sqrt(card_setM) * std::sqrt(card_setN) * std::pow(std::abs(b) / (M * N) + 1.0, 0.25) *
               (std::pow(N, 0.875) + std::pow(M, 0.3) * std::pow(N, 0.65)) +
           std::abs(a) * J * M / N;
}

/// S = sum over qualifying (m, n) of e_n(a m + b m*_n), with the lemma7_rhs bound.
inline ExpSumResult double_sum_S(const DataTuple& D, std::int64_t a, std::int64_t b, const ParallelConfig& cfg = {}) {
    if (b == 0) throw std::invalid_argument("double_sum_S: b must be nonzero");
    auto block = [&](std::size_t lo, std::size_t hi) {
        detail::SumAndCount p;
        D.for_each_pair(lo, hi, [&](std::int64_t m, std::int64_t n) {
            std::int64_t inv = mod_inverse(m, n).value;
            __int128 t = static_cast<__int128>(mod_floor(a, n)) * (m % n) + static_cast<__int128>(mod_floor(b, n)) * inv;
            p.sum.add(e_k(n, static_cast<std::int64_t>(t % n)));
            ++p.count;
        });
        return p;
    };
    auto total = blocked_reduce<detail::SumAndCount>(D.setN.size(), cfg, block, detail::combine);
    ExpSumResult r;
    r.value = total.sum.value();
    r.terms_counted = total.count;
    r.bound_rhs = lemma7_rhs(static_cast<double>(D.setM.size()), static_cast<double>(D.setN.size()),
                             static_cast<double>(D.M), static_cast<double>(D.N), static_cast<double>(a),
                             static_cast<double>(b), static_cast<double>(total.count));
    detail::finish(r);
    return r;
}

/**
 * beta = sum_{K < k <= K + L} e_M(c k) in closed form:
 *   e(c (2K + L + 1) / (2M)) * sin(pi c L / M) / sin(pi c / M),  or L when M | c.
 */
inline Complex window_sum_beta(std::int64_t M, std::int64_t c, std::int64_t K, std::int64_t L) {
    if (M < 1 || L < 1 || L > M) throw std::invalid_argument("window_sum_beta: need 1 <= L <= M");
    if (mod_floor(c, M) == 0) return static_cast<double>(L);
    const double pi = boost::math::constants::pi<double>();
    const std::int64_t twoM = 2 * M;
    auto sin_pi_over_M = [&](std::int64_t x) {
        // sin(pi x / M) with x reduced modulo 2M.
        std::int64_t r = mod_floor(x, twoM);
        if (r > M) r -= twoM;
        return std::sin(pi * static_cast<double>(r) / static_cast<double>(M));
    };
    auto cl = static_cast<std::int64_t>(static_cast<__int128>(mod_floor(c, twoM)) * L % twoM);
    double ratio = sin_pi_over_M(cl) / sin_pi_over_M(c);
    auto phase_arg = static_cast<std::int64_t>(static_cast<__int128>(mod_floor(c, twoM)) * mod_floor(2 * K + L + 1, twoM) % twoM);
    return e_k(twoM, phase_arg) * ratio;
}

/**
 * S0 = sum over qualifying (m, n) of e_n(b m*_n), rebuilt through the
 * completion identity over the full residue system c = 0..M-1:
 *   S0 = M^-1 sum_c sum_{m, n coprime} e_M(-c m) beta_n^{(c)} e_n(b m*_n).
 * Windows must lie in (M, 2M] with L <= M; nothing else about D is assumed.
 */
inline Complex completed_sum_S0(const DataTuple& D, std::int64_t b, const ParallelConfig& cfg = {}) {
    if (b == 0) throw std::invalid_argument("completed_sum_S0: b must be nonzero");
    const std::int64_t M = D.M;
    // Kloosterman phases for every (m, n) in setM x setN, coprime; zero otherwise.
    const std::size_t nm = D.setM.size();
    const std::size_t nn = D.setN.size();
    std::vector<Complex> kl(nm * nn, 0.0);
    for (std::size_t j = 0; j < nn; ++j) {
        std::int64_t n = D.setN[j];
        for (std::size_t i = 0; i < nm; ++i) {
            std::int64_t m = D.setM[i];
            if (gcd(m, n) != 1) continue;
            std::int64_t inv = mod_inverse(m, n).value;
            kl[j * nm + i] = e_k(n, static_cast<std::int64_t>(static_cast<__int128>(mod_floor(b, n)) * inv % n));
        }
    }
    auto block = [&](std::size_t lo, std::size_t hi) {
        CompensatedComplexSum p;
        for (std::size_t c = lo; c < hi; ++c) {
            const auto cc = static_cast<std::int64_t>(c);
            for (std::size_t j = 0; j < nn; ++j) {
                Complex beta = window_sum_beta(M, cc, D.windows[j].K, D.windows[j].L);
                CompensatedComplexSum inner;
                for (std::size_t i = 0; i < nm; ++i) {
                    const Complex& k = kl[j * nm + i];
                    if (k == Complex{}) continue;
                    inner.add(e_k(M, -cc * D.setM[i]) * k);
                }
                p.add(beta * inner.value());
            }
        }
        return p;
    };
    auto total = blocked_reduce<CompensatedComplexSum>(
        static_cast<std::size_t>(M), cfg, block,
        [](CompensatedComplexSum& t, const CompensatedComplexSum& p) { t.add(p); });
    return total.value() / static_cast<double>(M);
}

}  // namespace dsum
