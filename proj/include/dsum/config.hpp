#pragma once

// Binds ExperimentConfig to a CLI11 application.  The same binding reads
// config files (`--config FILE`, TOML-style with one section per command)
// and command-line flags; flags given on the command line win.

#include "dsum/experiments.hpp"

#include <CLI11.hpp>

#include <sstream>
#include <string>

namespace dsum {

struct BoundApp {
    CLI::App* app = nullptr;
    std::vector<CLI::App*> commands;
};

inline BoundApp bind_config(CLI::App& app, ExperimentConfig& c) {
    BoundApp bound{&app, {}};
    app.add_option("--command", c.command, "Command to run when none is given on the command line");
    app.add_option("--threads", c.threads, "Worker threads (output does not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--output,-o", c.output, "Write output to this file instead of stdout");
    app.add_option("--block-size,--block_size", c.block_size, "Fixed reduction block size")->check(CLI::PositiveNumber);

    auto* sum = app.add_subcommand("sum", "Exact s(m,n), S(m,n) = 12 s(m,n) and the reduced denominator of S");
    sum->add_option("m", c.m)->required();
    sum->add_option("n", c.n)->required();
    sum->add_flag("--naive", c.naive, "Use the O(n) defining sum (cross-checked against reciprocity)");

    auto* qn = app.add_subcommand("qn", "Least denominators q(n) by closed form, optionally checked by brute force");
    qn->add_option("--N", c.qn_N, "Rows 1..N");
    qn->add_option("--check-bruteforce-upto,--check_bruteforce_upto", c.check_upto,
                   "Brute-force q(n) for n up to this bound");

    auto* mv = app.add_subcommand("meanvalue", "sum_{n<=N} q(n) against C N^2 / sqrt(log N)");
    mv->add_option("--N-list,--N_list", c.N_list)->expected(1, -1);
    mv->add_option("--prime-limit,--prime_limit", c.prime_limit)->check(CLI::Range(2u, 4000000000u));
    mv->add_option("--constant", c.constant, "stated | derived");

    auto data_options = [&](CLI::App* sub) {
        sub->add_option("--M", c.M)->check(CLI::PositiveNumber);
        sub->add_option("--N", c.N)->check(CLI::PositiveNumber);
        sub->add_option("--setM", c.setM, "full | primes | smooth:Q | random:D:SEED | explicit:[..]");
        sub->add_option("--setN", c.setN, "full | primes | smooth:Q | random:D:SEED | explicit:[..]");
        sub->add_option("--windows", c.windows, "full | constant:K:L | random:SEED");
    };

    auto* disc = app.add_subcommand("discrepancy", "Star discrepancy of {rho s(m,n)} over the data tuple");
    disc->add_option("--rho", c.rho, "Rational (12, 3/2, 0.5), pi, e or sqrt:<q>");
    data_options(disc);
    disc->add_option("--H", c.H, "Erdős–Turán cutoff; 0 picks floor(sqrt(N/M))");

    auto* ex = app.add_subcommand("expsum", "Kloosterman-fraction sums C(M,N;beta,b) or the double sum S");
    ex->add_option("--kind", c.kind, "C | S");
    data_options(ex);
    ex->add_option("--b", c.b)->expected(1, -1);
    ex->add_option("--a", c.a)->expected(1, -1);
    ex->add_option("--beta", c.beta, "ones | random:<seed>");

    auto* st = app.add_subcommand("selftest", "Run the brute-force oracle suite");
    st->add_option("--scale", c.scale, "small | full");

    bound.commands = {sum, qn, mv, disc, ex, st};
    for (auto* sub : bound.commands) sub->fallthrough();
    app.require_subcommand(0, 1);
    return bound;
}

/// Resolves the command from the parsed subcommand, else from the config's `command` key.
inline void resolve_command(const BoundApp& bound, ExperimentConfig& c) {
    for (auto* sub : bound.commands)
        if (sub->parsed()) c.command = sub->get_name();
    if (c.command.empty()) throw std::invalid_argument("no command given");
}

/// Inverse of render(): reads a config document into a fresh ExperimentConfig.
inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    CLI::App app{"dsum"};
    auto bound = bind_config(app, c);
    for (auto* sub : bound.commands) sub->configurable();
    std::istringstream in(text);
    app.parse_from_stream(in);
    resolve_command(bound, c);
    return c;
}

}  // namespace dsum
