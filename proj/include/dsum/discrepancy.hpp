#pragma once

/**
 * @file discrepancy.hpp
 * @brief Star discrepancy of fractional parts {rho s(m, n)} over the data
 *        tuple's qualifying pairs, the Erdős–Turán right-hand side, and the
 *        bound evaluators for the equidistribution statement.
 *
 * Counting is over closed intervals [0, lambda].  For sorted points
 * g_1 <= ... <= g_J (with g_{J+1} = 1) the supremum of |A(lambda) - lambda J|
 * is max_i max(i - J g_i, J g_{i+1} - i), i = 0..J.
 *
 * Erdős–Turán is used in the explicit form
 *   Delta <= J / (H + 1) + 3 sum_{h <= H} |sum_j e(h g_j)| / h.
 */

#include "dsum/compensated.hpp"
#include "dsum/data_tuple.hpp"
#include "dsum/dedekind.hpp"
#include "dsum/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace dsum {

/// Finite multiset of values in [0, 1).
template <typename T>
struct FracPoints {
    std::vector<T> values;
    std::size_t J() const { return values.size(); }
};

using ExactPoints = FracPoints<ExactRational>;
using HighPoints = FracPoints<HighReal>;

inline std::vector<std::pair<std::int64_t, std::int64_t>> qualifying_pairs(const DataTuple& D) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    D.for_each_pair(0, D.setN.size(), [&](std::int64_t m, std::int64_t n) { out.emplace_back(m, n); });
    return out;
}

inline std::uint64_t count_N_D(const DataTuple& D) {
    std::uint64_t count = 0;
    D.for_each_pair(0, D.setN.size(), [&](std::int64_t, std::int64_t) { ++count; });
    return count;
}

namespace detail {

template <typename T, typename PointFn>
FracPoints<T> collect_points(const DataTuple& D, unsigned threads, PointFn point) {
    // One bucket per n, merged in setN order.
    std::vector<std::vector<T>> buckets(D.setN.size());
    parallel_for(D.setN.size(), threads, [&](std::size_t i) {
        D.for_each_pair(i, i + 1, [&](std::int64_t m, std::int64_t n) { buckets[i].push_back(point(m, n)); });
    });
    FracPoints<T> out;
    for (auto& b : buckets)
        for (auto& v : b) out.values.push_back(std::move(v));
    return out;
}

}  // namespace detail

/// {rho s(m, n)} exactly; rho must be rational.  rho = 12 uses {(m + m*)/n}.
inline ExactPoints frac_points_exact(const DataTuple& D, unsigned threads = 1) {
    if (!D.rho.is_rational()) throw std::invalid_argument("frac_points_exact: rho is not rational");
    const ExactRational rho = D.rho.exact();
    return detail::collect_points<ExactRational>(
        D, threads, [&](std::int64_t m, std::int64_t n) { return frac_rho_s_exact(rho, m, n); });
}

/// {rho s(m, n)} to 50 significant digits, for any rho.
inline HighPoints frac_points(const DataTuple& D, unsigned threads = 1) {
    return detail::collect_points<HighReal>(D, threads,
                                           [&](std::int64_t m, std::int64_t n) { return frac_rho_s(D.rho, m, n); });
}

/// A_D(lambda): qualifying pairs with {rho s(m, n)} in [0, lambda].
inline std::uint64_t count_A(const DataTuple& D, const ExactRational& lambda) {
    std::uint64_t count = 0;
    if (D.rho.is_rational()) {
        const ExactRational rho = D.rho.exact();
        D.for_each_pair(0, D.setN.size(), [&](std::int64_t m, std::int64_t n) {
            if (frac_rho_s_exact(rho, m, n) <= lambda) ++count;
        });
    } else {
        const HighReal lam = to_high(lambda);
        D.for_each_pair(0, D.setN.size(), [&](std::int64_t m, std::int64_t n) {
            if (frac_rho_s(D.rho, m, n) <= lam) ++count;
        });
    }
    return count;
}

/// sup over lambda in [0, 1] of |#{g <= lambda} - lambda J|, exact in T's arithmetic.
template <typename T>
T star_discrepancy(std::vector<T> g) {
    std::sort(g.begin(), g.end());
    const std::size_t J = g.size();
    const T JJ = T(static_cast<std::int64_t>(J));
    T best = T(0);
    for (std::size_t i = 0; i <= J; ++i) {
        const T ii = T(static_cast<std::int64_t>(i));
        if (i > 0) {
            T left = ii - JJ * g[i - 1];
            if (left > best) best = left;
        }
        T next = (i < J) ? g[i] : T(1);
        T right = JJ * next - ii;
        if (right > best) best = right;
    }
    return best;
}

template <typename T>
T star_discrepancy(const FracPoints<T>& G) {
    return star_discrepancy(G.values);
}

struct DeltaResult {
    double value = 0.0;
    std::optional<ExactRational> exact;  ///< present when rho is rational
    std::uint64_t N_D = 0;
};

/// Delta_D = sup_lambda |A_D(lambda) - lambda N_D|.
inline DeltaResult delta_D(const DataTuple& D, unsigned threads = 1) {
    DeltaResult r;
    if (D.rho.is_rational()) {
        auto pts = frac_points_exact(D, threads);
        r.N_D = pts.J();
        r.exact = star_discrepancy(pts);
        r.value = r.exact->to_double();
    } else {
        auto pts = frac_points(D, threads);
        r.N_D = pts.J();
        r.value = star_discrepancy(pts).convert_to<double>();
    }
    return r;
}

namespace detail {

inline Complex e_of(const ExactRational& g, std::int64_t h) {
    // g = a/q exactly: e(h a / q) from the residue h a mod q.
    const BigInt& q = g.denominator();
    if (q > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) return e_frac((to_high(g) * h).convert_to<double>());
    BigInt r = (g.numerator() * h) % q;
    if (r < 0) r += q;
    return e_k(q.convert_to<std::int64_t>(), r.convert_to<std::int64_t>());
}

inline Complex e_of(const HighReal& g, std::int64_t h) { return e_frac(frac(HighReal(g * h)).convert_to<double>()); }

inline Complex e_of(double g, std::int64_t h) { return e_frac(g * static_cast<double>(h)); }

}  // namespace detail

/// |sum_j e(h g_j)| for h = 1..H.
template <typename T>
std::vector<double> weyl_sums(const std::vector<T>& g, std::int64_t H) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(H, 0)));
    for (std::int64_t h = 1; h <= H; ++h) {
        CompensatedComplexSum s;
        for (const auto& x : g) s.add(detail::e_of(x, h));
        out.push_back(std::abs(s.value()));
    }
    return out;
}

inline constexpr double kErdosTuranMainConstant = 1.0;  // on J / (H + 1)
inline constexpr double kErdosTuranSumConstant = 3.0;   // on the Weyl-sum term

template <typename T>
double erdos_turan_rhs(const std::vector<T>& g, std::int64_t H) {
    if (H < 1) throw std::invalid_argument("erdos_turan_rhs: H must be >= 1");
    if (g.empty()) return 0.0;
    CompensatedSum sum;
    auto w = weyl_sums(g, H);
    for (std::int64_t h = 1; h <= H; ++h) sum.add(w[static_cast<std::size_t>(h - 1)] / static_cast<double>(h));
    return kErdosTuranMainConstant * static_cast<double>(g.size()) / static_cast<double>(H + 1) +
           kErdosTuranSumConstant * sum.value();
}

template <typename T>
double erdos_turan_rhs(const FracPoints<T>& G, std::int64_t H) {
    return erdos_turan_rhs(G.values, H);
}

// Bound evaluators: implied constants 1, o(1) = 0.  Stated for rho = 12;
// for other rho they are heuristic.

/// card^{1/2} M^{3/10} N^{13/20} + N_D M^{1/2} N^{-1/2}
inline double thm1_bound(double M, double N, double card_MxN, double N_D) {
    return std::sqrt(card_MxN) * std::pow(M, 0.3) * std::pow(N, 0.65) + N_D * std::sqrt(M / N);
}

/// card^{1/2} M^{3/10} N^{13/20} + card M^{1/2} N^{-1/2}
inline double cor1_bound(double M, double N, double card_MxN) { return thm1_bound(M, N, card_MxN, card_MxN); }

/// M^{4/5} N^{23/20} + M^{3/2} N^{1/2}
inline double cor2_bound(double M, double N) {
    return std::pow(M, 0.8) * std::pow(N, 1.15) + std::pow(M, 1.5) * std::sqrt(N);
}

/// floor(sqrt(N / M)), at least 1.
inline std::int64_t et_h_choice(std::int64_t M, std::int64_t N) {
    if (M < 1 || N < M) throw std::invalid_argument("et_h_choice: need 1 <= M <= N");
    std::int64_t h = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N) / static_cast<double>(M)));
    while (h > 0 && static_cast<__int128>(h) * h * M > N) --h;
    while (static_cast<__int128>(h + 1) * (h + 1) * M <= N) ++h;
    return std::max<std::int64_t>(h, 1);
}

}  // namespace dsum
