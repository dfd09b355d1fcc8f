#pragma once

// The experiment data (rho, M, N, K, L, setM, setN).  setN lives in (N, 2N],
// setM in (M, 2M], and each n in setN carries a window (K_n, K_n + L_n]
// with M <= K_n < K_n + L_n <= 2M.

#include "dsum/dedekind.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsum {

struct Window {
    std::int64_t K = 0;
    std::int64_t L = 1;

    bool contains(std::int64_t m) const { return K < m && m <= K + L; }
    friend bool operator==(const Window&, const Window&) = default;
};

struct DataTuple {
    Rho rho{12};
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::vector<std::int64_t> setM;  // sorted, inside (M, 2M]
    std::vector<std::int64_t> setN;  // sorted, inside (N, 2N]
    std::vector<Window> windows;     // windows[i] belongs to setN[i]

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const {
        if (M < 1 || N < 1) throw std::invalid_argument("M and N must be positive");
        if (M > N) throw std::invalid_argument("M <= N is required");
        if (windows.size() != setN.size()) throw std::invalid_argument("one window per element of setN is required");
        auto check_set = [](const std::vector<std::int64_t>& s, std::int64_t X, const char* name) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] <= X || s[i] > 2 * X)
                    throw std::invalid_argument(std::string(name) + " element " + std::to_string(s[i]) +
                                                " outside (" + std::to_string(X) + ", " + std::to_string(2 * X) + "]");
                if (i > 0 && s[i] <= s[i - 1])
                    throw std::invalid_argument(std::string(name) + " must be strictly increasing");
            }
        };
        check_set(setM, M, "setM");
        check_set(setN, N, "setN");
        for (std::size_t i = 0; i < setN.size(); ++i) {
            const Window& w = windows[i];
            if (!(M <= w.K && w.L >= 1 && w.K + w.L <= 2 * M))
                throw std::invalid_argument("window for n = " + std::to_string(setN[i]) + " violates M <= K < K + L <= 2M");
        }
    }

    std::uint64_t card_MxN() const { return static_cast<std::uint64_t>(setM.size()) * setN.size(); }

    /// Calls fn(m, n) for each m in setM with K_n < m <= K_n + L_n and gcd(m, n) = 1,
    /// for the n = setN[i] with i in [first, last), in (n, m) order.
    template <typename Fn>
    void for_each_pair(std::size_t first, std::size_t last, Fn&& fn) const {
        for (std::size_t i = first; i < last; ++i) {
            const std::int64_t n = setN[i];
            const Window& w = windows[i];
            auto lo = std::upper_bound(setM.begin(), setM.end(), w.K);
            for (auto it = lo; it != setM.end() && *it <= w.K + w.L; ++it)
                if (gcd(*it, n) == 1) fn(*it, n);
        }
    }
};

}  // namespace dsum
