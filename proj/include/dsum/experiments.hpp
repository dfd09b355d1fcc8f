#pragma once

/**
 * @file experiments.hpp
 * @brief Experiment runners behind the `dsum` subcommands.
 *
 * Every runner writes a CSV document to a stream: '#'-prefixed metadata
 * (tool version, command, config hash, adopted constants) followed by a
 * header row and data rows.  Output never depends on the thread count; the
 * config hash excludes `threads` and `output` for that reason.
 */

#include "dsum/dedekind.hpp"
#include "dsum/denominators.hpp"
#include "dsum/discrepancy.hpp"
#include "dsum/expsums.hpp"
#include "dsum/generators.hpp"
#include "dsum/oracles.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef DSUM_VERSION
#define DSUM_VERSION "1.0.0"
#endif

namespace dsum {

/// An oracle disagreed with a fast path.  Maps to exit code 3.
class invariant_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;

    // execution (not part of the config hash)
    unsigned threads = 1;
    std::string output;

    std::size_t block_size = 4096;

    // sum
    std::int64_t m = 1;
    std::int64_t n = 1;
    bool naive = false;

    // qn
    std::uint32_t qn_N = 0;
    std::uint32_t check_upto = 0;

    // meanvalue
    std::vector<std::uint32_t> N_list{10000, 100000, 1000000};
    std::uint32_t prime_limit = 10000000;
    std::string constant = "stated";  // stated | derived

    // discrepancy / expsum
    std::string rho = "12";
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::string setM = "full";
    std::string setN = "full";
    std::string windows = "full";
    std::int64_t H = 0;  // 0: floor(sqrt(N/M))

    // expsum
    std::string kind = "C";  // C: bilinear C(M,N;beta,b); S: double sum over the data tuple
    std::vector<std::int64_t> b{1};
    std::vector<std::int64_t> a{0};
    std::string beta = "ones";  // ones | random:<seed>

    // selftest
    std::string scale = "small";  // small | full

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    ParallelConfig parallel() const { return {threads, block_size}; }
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

/**
 * TOML-style text: top-level `command`, `threads`, `block_size`, `output`,
 * then one `[command]` section with the keys that command reads.
 */
inline std::string render(const ExperimentConfig& c, bool include_execution = true) {
    using detail::join;
    using detail::quote;
    std::ostringstream os;
    os << "command=" << quote(c.command) << "\n";
    if (include_execution) {
        os << "threads=" << c.threads << "\n";
        os << "output=" << quote(c.output) << "\n";
    }
    os << "block_size=" << c.block_size << "\n";
    os << "[" << c.command << "]\n";
    if (c.command == "sum") {
        os << "m=" << c.m << "\nn=" << c.n << "\nnaive=" << (c.naive ? "true" : "false") << "\n";
    } else if (c.command == "qn") {
        os << "N=" << c.qn_N << "\ncheck_bruteforce_upto=" << c.check_upto << "\n";
    } else if (c.command == "meanvalue") {
        os << "N_list=" << join(c.N_list) << "\nprime_limit=" << c.prime_limit << "\nconstant=" << quote(c.constant)
           << "\n";
    } else if (c.command == "discrepancy") {
        os << "rho=" << quote(c.rho) << "\nM=" << c.M << "\nN=" << c.N << "\nsetM=" << quote(c.setM)
           << "\nsetN=" << quote(c.setN) << "\nwindows=" << quote(c.windows) << "\nH=" << c.H << "\n";
    } else if (c.command == "expsum") {
        os << "kind=" << quote(c.kind) << "\nM=" << c.M << "\nN=" << c.N << "\nb=" << join(c.b) << "\na=" << join(c.a)
           << "\nbeta=" << quote(c.beta) << "\nsetM=" << quote(c.setM) << "\nsetN=" << quote(c.setN)
           << "\nwindows=" << quote(c.windows) << "\n";
    } else if (c.command == "selftest") {
        os << "scale=" << quote(c.scale) << "\n";
    }
    return os.str();
}

/// FNV-1a 64 of render(c, false), as 16 hex digits.
inline std::string config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : render(c, false)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_metadata(std::ostream& os, const ExperimentConfig& c, const std::vector<std::string>& extra = {}) {
    os << "# dsum " << DSUM_VERSION << "\n";
    os << "# command: " << c.command << "\n";
    os << "# config_hash: fnv1a64:" << config_hash(c) << "\n";
    os << "# constants: bound evaluators use implied constant 1 and N^o(1) = 1; "
          "erdos_turan = J/(H+1) + 3*sum_h |W_h|/h\n";
    for (const auto& line : extra) os << "# " << line << "\n";
}

inline void run_sum(const ExperimentConfig& c, std::ostream& os) {
    ExactRational s = c.naive ? dedekind_naive(c.m, c.n) : dedekind_fast(c.m, c.n);
    if (c.naive && s != dedekind_fast(c.m, c.n))
        throw invariant_violation("naive and reciprocity evaluations disagree for (" + std::to_string(c.m) + ", " +
                                  std::to_string(c.n) + ")");
    ExactRational S = s * ExactRational(12);
    os << "s=" << s << " S=" << S << " q=" << S.denominator() << "\n";
}

inline void run_qn(const ExperimentConfig& c, std::ostream& os) {
    const std::uint32_t rows = std::max(c.qn_N, c.check_upto);
    if (rows < 1) throw std::invalid_argument("qn: give --N or --check-bruteforce-upto");
    auto q = q_table(rows);
    std::vector<std::uint64_t> brute(c.check_upto + 1, 0);
    parallel_for(c.check_upto, c.threads, [&](std::size_t i) { brute[i + 1] = q_bruteforce(i + 1); });
    write_metadata(os, c);
    os << "n,q_formula,q_bruteforce,match,cumulative_sum\n";
    unsigned __int128 cum = 0;
    std::uint32_t mismatches = 0;
    for (std::uint32_t n = 1; n <= rows; ++n) {
        cum += q[n];
        os << n << "," << q[n] << ",";
        if (n <= c.check_upto) {
            bool ok = brute[n] == q[n];
            if (!ok) ++mismatches;
            os << brute[n] << "," << (ok ? "true" : "false");
        } else {
            os << ",";
        }
        os << "," << static_cast<std::uint64_t>(cum) << "\n";
    }
    if (mismatches) throw invariant_violation("qn: " + std::to_string(mismatches) + " closed-form/brute-force mismatches");
}

inline void run_meanvalue(const ExperimentConfig& c, std::ostream& os) {
    if (c.constant != "stated" && c.constant != "derived")
        throw std::invalid_argument("meanvalue: --constant must be 'stated' or 'derived'");
    auto primes = primes_up_to(c.prime_limit);
    ConstantC C = c.constant == "stated"
                      ? constant_C_from_primes(primes, c.prime_limit)
                      : derived_mean_value_constant(primes, c.prime_limit, two_adic_euler_factor().to_double());
    auto reports = mean_value_experiment(c.N_list, C);
    write_metadata(os, c,
                   {"mean-value constant: " + c.constant +
                    (c.constant == "stated" ? " (2-adic Euler factor 3/4)" : " (2-adic Euler factor 3/2 from q_formula)")});
    os << "N,direct_sum,prediction,ratio,C_value,C_tail_error\n";
    for (const auto& r : reports)
        os << r.N << "," << r.direct_sum << "," << detail::fmt_double(r.predicted) << "," << detail::fmt_double(r.ratio)
           << "," << detail::fmt_double(r.C_value) << "," << detail::fmt_double(r.C_tail_error) << "\n";
}

inline DataTuple data_tuple_from(const ExperimentConfig& c) {
    return make_data_tuple(Rho::parse(c.rho), c.M, c.N, SetSpec::parse(c.setM), SetSpec::parse(c.setN),
                           WindowSpec::parse(c.windows));
}

struct DiscrepancyRow {
    std::uint64_t N_D = 0;
    double delta = 0.0;
    double delta_over_ND = 0.0;
    double thm1 = 0.0;
    double ratio = 0.0;
    std::int64_t H = 1;
    double et_rhs = 0.0;
};

inline DiscrepancyRow discrepancy_row(const DataTuple& D, std::int64_t H, unsigned threads) {
    DiscrepancyRow r;
    r.H = H > 0 ? H : et_h_choice(D.M, D.N);
    if (D.rho.is_rational()) {
        auto pts = frac_points_exact(D, threads);
        r.N_D = pts.J();
        r.delta = star_discrepancy(pts).to_double();
        r.et_rhs = erdos_turan_rhs(pts, r.H);
    } else {
        auto pts = frac_points(D, threads);
        r.N_D = pts.J();
        r.delta = star_discrepancy(pts).convert_to<double>();
        r.et_rhs = erdos_turan_rhs(pts, r.H);
    }
    r.delta_over_ND = r.N_D ? r.delta / static_cast<double>(r.N_D) : 0.0;
    r.thm1 = thm1_bound(static_cast<double>(D.M), static_cast<double>(D.N), static_cast<double>(D.card_MxN()),
                        static_cast<double>(r.N_D));
    r.ratio = r.thm1 > 0 ? r.delta / r.thm1 : 0.0;
    return r;
}

inline void run_discrepancy(const ExperimentConfig& c, std::ostream& os) {
    DataTuple D = data_tuple_from(c);
    auto r = discrepancy_row(D, c.H, c.threads);
    std::vector<std::string> extra;
    if (!(D.rho.is_rational() && D.rho.exact() == ExactRational(12)))
        extra.push_back("thm1_bound is stated for rho = 12; heuristic for rho = " + D.rho.label());
    write_metadata(os, c, extra);
    os << "rho,M,N,set_spec,N_D,delta,delta_over_ND,thm1_bound,ratio,H,et_rhs\n";
    os << D.rho.label() << "," << D.M << "," << D.N << ","
       << detail::quote("setM=" + c.setM + ";setN=" + c.setN + ";windows=" + c.windows) << "," << r.N_D << ","
       << detail::fmt_double(r.delta) << "," << detail::fmt_double(r.delta_over_ND) << "," << detail::fmt_double(r.thm1)
       << "," << detail::fmt_double(r.ratio) << "," << r.H << "," << detail::fmt_double(r.et_rhs) << "\n";
}

inline WeightSeq weights_from(const std::string& spec, std::int64_t N) {
    if (spec == "ones") return WeightSeq::ones(N);
    if (spec.rfind("random:", 0) == 0)
        return WeightSeq::random_unit(N, detail::parse_number<std::uint64_t>(std::string_view(spec).substr(7), "seed"));
    throw std::invalid_argument("beta must be 'ones' or 'random:<seed>'");
}

inline void run_expsum(const ExperimentConfig& c, std::ostream& os) {
    if (c.kind != "C" && c.kind != "S") throw std::invalid_argument("expsum: --kind must be C or S");
    if (c.b.empty()) throw std::invalid_argument("expsum: at least one b is required");
    std::vector<std::string> extra{"kind: " + c.kind};
    if (c.kind == "C") extra.push_back("beta: " + c.beta + "; rhs: two-term form (N^{7/4} + M^{3/5} N^{13/10})");
    write_metadata(os, c, extra);
    os << "M,N,b,a,sum_real,sum_imag,rhs,ratio,terms\n";
    auto row = [&](std::int64_t b, const std::string& a, const ExpSumResult& r) {
        os << c.M << "," << c.N << "," << b << "," << a << "," << detail::fmt_double(r.value.real()) << ","
           << detail::fmt_double(r.value.imag()) << "," << detail::fmt_double(r.bound_rhs) << ","
           << detail::fmt_double(r.ratio) << "," << r.terms_counted << "\n";
    };
    if (c.kind == "C") {
        WeightSeq beta = weights_from(c.beta, c.N);
        for (auto b : c.b) row(b, "", big_C(c.M, c.N, beta, b, c.parallel()));
    } else {
        DataTuple D = data_tuple_from(c);
        for (auto b : c.b)
            for (auto a : c.a) row(b, std::to_string(a), double_sum_S(D, a, b, c.parallel()));
    }
}

/**
 * Oracle suite: each check compares a fast path with its brute-force
 * reference.  Writes one CSV row per check and throws invariant_violation
 * if any check fails.
 */
inline void run_selftest(const ExperimentConfig& c, std::ostream& os) {
    const bool full = c.scale == "full";
    if (!full && c.scale != "small") throw std::invalid_argument("selftest: --scale must be small or full");
    struct Check {
        std::string name;
        std::uint64_t cases = 0;
        std::uint64_t failures = 0;
    };
    std::vector<Check> checks;
    auto per_n = [&](const std::string& name, std::int64_t n_max, auto&& test_n) {
        std::vector<std::uint64_t> cases(static_cast<std::size_t>(n_max)), fails(static_cast<std::size_t>(n_max));
        parallel_for(static_cast<std::size_t>(n_max), c.threads, [&](std::size_t i) {
            auto [k, f] = test_n(static_cast<std::int64_t>(i) + 1);
            cases[i] = k;
            fails[i] = f;
        });
        Check ch{name};
        for (std::size_t i = 0; i < cases.size(); ++i) {
            ch.cases += cases[i];
            ch.failures += fails[i];
        }
        checks.push_back(ch);
    };
    using Tally = std::pair<std::uint64_t, std::uint64_t>;

    per_n("reciprocity_vs_definition", full ? 500 : 120, [](std::int64_t n) {
        Tally t{0, 0};
        for (std::int64_t m = 1; m <= n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            ++t.first;
            if (dedekind_fast(m, n) != dedekind_naive(m, n)) ++t.second;
        }
        return t;
    });
    per_n("naive_vs_sawtooth_definition", full ? 120 : 40, [](std::int64_t n) {
        Tally t{0, 0};
        for (std::int64_t m = 1; m <= n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            ++t.first;
            if (dedekind_naive(m, n) != oracle::dedekind_by_definition(m, n)) ++t.second;
        }
        return t;
    });
    per_n("hickerson_integrality", full ? 300 : 100, [](std::int64_t n) {
        Tally t{0, 0};
        for (std::int64_t m = 1; m <= n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            ++t.first;
            ExactRational d = dedekind_fast(m, n) * ExactRational(12) -
                              ExactRational(m + mod_inverse(m, n).value, n);
            if (!d.is_integer()) ++t.second;
        }
        return t;
    });
    per_n("mod_inverse_vs_scan", full ? 2000 : 300, [](std::int64_t n) {
        Tally t{0, 0};
        for (std::int64_t m = 1; m <= n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            ++t.first;
            if (mod_inverse(m, n).value != oracle::mod_inverse_scan(m, n)) ++t.second;
        }
        return t;
    });
    per_n("q_formula_vs_bruteforce", full ? 2000 : 300, [](std::int64_t n) {
        auto u = static_cast<std::uint64_t>(n);
        return Tally{1, q_formula(u) != q_bruteforce(u) ? 1u : 0u};
    });
    {
        const std::uint32_t top = full ? 100000 : 10000;
        auto table = q_table(top);
        Check ch{"q_sieve_vs_factoring"};
        for (std::uint32_t n = 1; n <= top; ++n) {
            ++ch.cases;
            if (table[n] != oracle::q_by_factoring(n)) ++ch.failures;
        }
        checks.push_back(ch);
    }
    {
        Check ch{"window_sum_closed_form"};
        for (std::int64_t M = 1; M <= (full ? 64 : 24); ++M)
            for (std::int64_t c = -(M - 1) / 2; c <= (M - 1) / 2; ++c)
                for (std::int64_t K = M; K < 2 * M; ++K)
                    for (std::int64_t L = 1; K + L <= 2 * M; ++L) {
                        ++ch.cases;
                        Complex fast = window_sum_beta(M, c, K, L);
                        bool ok = std::abs(fast - oracle::window_sum_direct(M, c, K, L)) <= 1e-9;
                        if (c != 0) ok = ok && std::abs(fast) <= std::min<double>(L, M / (2.0 * std::abs(c))) + 1e-9;
                        if (!ok) ++ch.failures;
                    }
        checks.push_back(ch);
    }
    {
        Check ch{"completion_identity"};
        for (std::uint64_t seed = 1; seed <= (full ? 200u : 40u); ++seed) {
            SplitMix64 rng(seed);
            std::int64_t N = 1 + static_cast<std::int64_t>(rng.next() % 64);
            std::int64_t M = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(N));
            DataTuple D{Rho(12), M, N, gen_set(SetSpec::parse("random:0.6:" + std::to_string(rng.next())), M),
                        gen_set(SetSpec::parse("random:0.6:" + std::to_string(rng.next())), N), {}};
            D.windows = gen_windows(WindowSpec::parse("random:" + std::to_string(rng.next())), M, D.setN);
            std::int64_t b = 1 + static_cast<std::int64_t>(rng.next() % 50);
            ++ch.cases;
            if (std::abs(completed_sum_S0(D, b, c.parallel()) - oracle::S0_direct(D, b)) > 1e-6) ++ch.failures;
        }
        checks.push_back(ch);
    }
    {
        Check ch{"star_discrepancy_vs_enumeration"};
        for (std::uint64_t seed = 1; seed <= (full ? 200u : 50u); ++seed) {
            SplitMix64 rng(seed);
            std::size_t J = rng.next() % 51;
            std::vector<ExactRational> g;
            for (std::size_t j = 0; j < J; ++j) {
                auto q = static_cast<std::int64_t>(1 + rng.next() % 40);
                g.emplace_back(static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(q)), q);
            }
            ++ch.cases;
            if (star_discrepancy(g) != oracle::star_discrepancy_candidates(g)) ++ch.failures;
        }
        checks.push_back(ch);
    }

    write_metadata(os, c);
    os << "check,cases,failures,status\n";
    std::uint64_t failed = 0;
    for (const auto& ch : checks) {
        os << ch.name << "," << ch.cases << "," << ch.failures << "," << (ch.failures ? "FAIL" : "ok") << "\n";
        failed += ch.failures ? 1 : 0;
    }
    if (failed) throw invariant_violation("selftest: " + std::to_string(failed) + " oracle checks failed");
}

inline void run_command(const ExperimentConfig& c, std::ostream& os) {
    if (c.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (c.command == "sum") return run_sum(c, os);
    if (c.command == "qn") return run_qn(c, os);
    if (c.command == "meanvalue") return run_meanvalue(c, os);
    if (c.command == "discrepancy") return run_discrepancy(c, os);
    if (c.command == "expsum") return run_expsum(c, os);
    if (c.command == "selftest") return run_selftest(c, os);
    throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace dsum
