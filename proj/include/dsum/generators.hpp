#pragma once

/**
 * @file generators.hpp
 * @brief Sets inside (X, 2X] and windows (K_n, K_n + L_n] for experiment data.
 *
 * Set specs are tagged strings:
 *   full | primes | smooth:Q | random:<density>:<seed> | explicit:[a,b,...]
 * Window specs:
 *   full | constant:K:L | random:<seed>
 *
 * Randomness comes from SplitMix64 (state += 0x9E3779B97F4A7C15, then the
 * xor-shift-multiply finalizer with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB),
 * so any implementation reproduces the same sets from the same seed:
 *  - random set: element x is kept iff (next() >> 11) * 2^-53 < density,
 *    drawing once per x in ascending order;
 *  - random windows: for each n ascending, K = M + next() % M and
 *    L = 1 + next() % (2M - K).
 */

#include "dsum/data_tuple.hpp"
#include "dsum/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsum {

class SplitMix64 {
    std::uint64_t state_;

public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

struct SetSpec {
    enum class Kind { full_interval, primes, smooth, random, explicit_list };
    Kind kind = Kind::full_interval;
    std::uint64_t smooth_bound = 0;
    double density = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::int64_t> elements;

    static SetSpec parse(std::string_view text) {
        SetSpec s;
        auto parts = detail::split(text, ':');
        std::string_view tag = parts[0];
        if (tag == "full" && parts.size() == 1) {
            s.kind = Kind::full_interval;
        } else if (tag == "primes" && parts.size() == 1) {
            s.kind = Kind::primes;
        } else if (tag == "smooth" && parts.size() == 2) {
            s.kind = Kind::smooth;
            s.smooth_bound = detail::parse_number<std::uint64_t>(parts[1], "smoothness bound");
            if (s.smooth_bound < 2) throw std::invalid_argument("smooth:Q needs Q >= 2");
        } else if (tag == "random" && parts.size() == 3) {
            s.kind = Kind::random;
            s.density = std::stod(std::string(parts[1]));
            if (!(s.density >= 0.0 && s.density <= 1.0)) throw std::invalid_argument("random density must be in [0, 1]");
            s.seed = detail::parse_number<std::uint64_t>(parts[2], "seed");
        } else if (tag == "explicit" && parts.size() == 2) {
            s.kind = Kind::explicit_list;
            std::string_view body = parts[1];
            if (body.size() < 2 || body.front() != '[' || body.back() != ']')
                throw std::invalid_argument("explicit set must look like explicit:[a,b,...]");
            body = body.substr(1, body.size() - 2);
            if (!body.empty())
                for (auto item : detail::split(body, ','))
                    s.elements.push_back(detail::parse_number<std::int64_t>(item, "set element"));
        } else {
            throw std::invalid_argument("unknown set spec '" + std::string(text) + "'");
        }
        return s;
    }

    std::string render() const {
        switch (kind) {
            case Kind::full_interval: return "full";
            case Kind::primes: return "primes";
            case Kind::smooth: return "smooth:" + std::to_string(smooth_bound);
            case Kind::random: {
                // shortest round-trippable density
                char buf[64];
                auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, density);
                return "random:" + std::string(buf, ptr) + ":" + std::to_string(seed);
            }
            case Kind::explicit_list: {
                std::string r = "explicit:[";
                for (std::size_t i = 0; i < elements.size(); ++i) r += (i ? "," : "") + std::to_string(elements[i]);
                return r + "]";
            }
        }
        return {};
    }
};

/// Largest prime factor of n (1 for n = 1), by trial division.
inline std::uint64_t largest_prime_factor(std::uint64_t n) {
    std::uint64_t largest = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            largest = p;
            n /= p;
        }
    return n > 1 ? n : largest;
}

/// The subset of (X, 2X] described by `spec`, ascending.
inline std::vector<std::int64_t> gen_set(const SetSpec& spec, std::int64_t X) {
    if (X < 1) throw std::invalid_argument("set anchor X must be >= 1");
    std::vector<std::int64_t> out;
    using Kind = SetSpec::Kind;
    switch (spec.kind) {
        case Kind::full_interval:
            for (std::int64_t x = X + 1; x <= 2 * X; ++x) out.push_back(x);
            break;
        case Kind::primes:
            for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(2 * X)))
                if (p > X) out.push_back(p);
            break;
        case Kind::smooth: {
            if (spec.smooth_bound < 2) throw std::invalid_argument("smooth:Q needs Q >= 2");
            // Strip every prime <= Q from each element; Q-smooth iff nothing remains.
            std::vector<std::uint64_t> rest;
            for (std::int64_t x = X + 1; x <= 2 * X; ++x) rest.push_back(static_cast<std::uint64_t>(x));
            auto limit = static_cast<std::uint32_t>(std::min<std::uint64_t>(spec.smooth_bound, 2 * X));
            for (std::uint32_t p : primes_up_to(limit)) {
                std::int64_t first = ((X / p) + 1) * p;
                for (std::int64_t x = first; x <= 2 * X; x += p) {
                    auto& r = rest[static_cast<std::size_t>(x - X - 1)];
                    while (r % p == 0) r /= p;
                }
            }
            for (std::size_t i = 0; i < rest.size(); ++i)
                if (rest[i] == 1) out.push_back(X + 1 + static_cast<std::int64_t>(i));
            break;
        }
        case Kind::random: {
            SplitMix64 rng(spec.seed);
            for (std::int64_t x = X + 1; x <= 2 * X; ++x)
                if (rng.next_unit() < spec.density) out.push_back(x);
            break;
        }
        case Kind::explicit_list: {
            out = spec.elements;
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            for (auto x : out)
                if (x <= X || x > 2 * X)
                    throw std::invalid_argument("explicit element " + std::to_string(x) + " outside (" +
                                                std::to_string(X) + ", " + std::to_string(2 * X) + "]");
            break;
        }
    }
    return out;
}

struct WindowSpec {
    enum class Kind { full, constant, random };
    Kind kind = Kind::full;
    std::int64_t K = 0;
    std::int64_t L = 0;
    std::uint64_t seed = 0;

    static WindowSpec parse(std::string_view text) {
        WindowSpec w;
        auto parts = detail::split(text, ':');
        if (parts[0] == "full" && parts.size() == 1) {
            w.kind = Kind::full;
        } else if (parts[0] == "constant" && parts.size() == 3) {
            w.kind = Kind::constant;
            w.K = detail::parse_number<std::int64_t>(parts[1], "K");
            w.L = detail::parse_number<std::int64_t>(parts[2], "L");
        } else if (parts[0] == "random" && parts.size() == 2) {
            w.kind = Kind::random;
            w.seed = detail::parse_number<std::uint64_t>(parts[1], "seed");
        } else {
            throw std::invalid_argument("unknown window spec '" + std::string(text) + "'");
        }
        return w;
    }

    std::string render() const {
        switch (kind) {
            case Kind::full: return "full";
            case Kind::constant: return "constant:" + std::to_string(K) + ":" + std::to_string(L);
            case Kind::random: return "random:" + std::to_string(seed);
        }
        return {};
    }
};

/// One window per element of setN, each satisfying M <= K < K + L <= 2M.
inline std::vector<Window> gen_windows(const WindowSpec& spec, std::int64_t M, const std::vector<std::int64_t>& setN) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    std::vector<Window> out;
    out.reserve(setN.size());
    switch (spec.kind) {
        case WindowSpec::Kind::full:
            out.assign(setN.size(), Window{M, M});
            break;
        case WindowSpec::Kind::constant:
            if (!(M <= spec.K && spec.L >= 1 && spec.K + spec.L <= 2 * M))
                throw std::invalid_argument("constant window (" + std::to_string(spec.K) + ", " +
                                            std::to_string(spec.K + spec.L) + "] violates M <= K < K + L <= 2M for M = " +
                                            std::to_string(M));
            out.assign(setN.size(), Window{spec.K, spec.L});
            break;
        case WindowSpec::Kind::random: {
            SplitMix64 rng(spec.seed);
            const auto um = static_cast<std::uint64_t>(M);
            for (std::size_t i = 0; i < setN.size(); ++i) {
                std::int64_t K = M + static_cast<std::int64_t>(rng.next() % um);
                std::int64_t L = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(2 * M - K));
                out.push_back({K, L});
            }
            break;
        }
    }
    return out;
}

/// Builds and validates a DataTuple from specs.
inline DataTuple make_data_tuple(const Rho& rho, std::int64_t M, std::int64_t N, const SetSpec& setM_spec,
                                 const SetSpec& setN_spec, const WindowSpec& windows) {
    DataTuple d{rho, M, N, gen_set(setM_spec, M), gen_set(setN_spec, N), {}};
    d.windows = gen_windows(windows, M, d.setN);
    d.validate();
    return d;
}

}  // namespace dsum
