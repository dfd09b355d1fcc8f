#include "dsum/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

std::string run(const dsum::ExperimentConfig& c) {
    std::ostringstream os;
    dsum::run_command(c, os);
    return os.str();
}

std::string strip_metadata(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out += line + "\n";
    return out;
}

dsum::ExperimentConfig parse_args(std::vector<std::string> args) {
    dsum::ExperimentConfig c;
    CLI::App app{"dsum"};
    auto bound = dsum::bind_config(app, c);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    dsum::resolve_command(bound, c);
    return c;
}

}  // namespace

TEST(Config, RenderParseRoundTrip) {
    std::vector<dsum::ExperimentConfig> cases(6);
    cases[0].command = "sum";
    cases[0].m = 5;
    cases[0].n = 17;
    cases[0].naive = true;
    cases[1].command = "qn";
    cases[1].qn_N = 50;
    cases[1].check_upto = 20;
    cases[2].command = "meanvalue";
    cases[2].N_list = {100, 1000};
    cases[2].prime_limit = 5000;
    cases[2].constant = "derived";
    cases[3].command = "discrepancy";
    cases[3].rho = "pi";
    cases[3].M = 16;
    cases[3].N = 64;
    cases[3].setM = "random:0.5:3";
    cases[3].setN = "explicit:[65,67,100]";
    cases[3].windows = "random:9";
    cases[3].H = 3;
    cases[4].command = "expsum";
    cases[4].kind = "S";
    cases[4].M = 8;
    cases[4].N = 9;
    cases[4].b = {1, -2};
    cases[4].a = {0, 3};
    cases[4].beta = "random:4";
    cases[5].command = "selftest";
    cases[5].scale = "full";
    for (auto& c : cases) {
        c.threads = 3;
        c.block_size = 128;
        c.output = "out.csv";
        EXPECT_EQ(dsum::parse_config(dsum::render(c)), c) << dsum::render(c);
    }
}

TEST(Config, HashIgnoresExecutionSettings) {
    dsum::ExperimentConfig a;
    a.command = "qn";
    a.qn_N = 10;
    auto b = a;
    b.threads = 8;
    b.output = "elsewhere.csv";
    EXPECT_EQ(dsum::config_hash(a), dsum::config_hash(b));
    b.qn_N = 11;
    EXPECT_NE(dsum::config_hash(a), dsum::config_hash(b));
    EXPECT_EQ(dsum::config_hash(a).size(), 16u);
}

TEST(Config, CommandLineParsing) {
    auto c = parse_args({"--threads", "2", "discrepancy", "--M", "8", "--N", "16", "--setN", "primes"});
    EXPECT_EQ(c.command, "discrepancy");
    EXPECT_EQ(c.threads, 2u);
    EXPECT_EQ(c.M, 8);
    EXPECT_EQ(c.N, 16);
    EXPECT_EQ(c.setN, "primes");
    auto s = parse_args({"sum", "3", "7", "--threads", "4"});
    EXPECT_EQ(s.m, 3);
    EXPECT_EQ(s.n, 7);
    EXPECT_EQ(s.threads, 4u);
    EXPECT_THROW(parse_args({"qn", "--bogus", "1"}), CLI::ParseError);
    EXPECT_THROW(parse_args({}), std::invalid_argument);
}

TEST(Commands, SumOutput) {
    dsum::ExperimentConfig c;
    c.command = "sum";
    c.m = 1;
    c.n = 3;
    EXPECT_EQ(run(c), "s=1/18 S=2/3 q=3\n");
    c.naive = true;
    EXPECT_EQ(run(c), "s=1/18 S=2/3 q=3\n");
    c.m = 2;
    c.n = 4;
    EXPECT_THROW(run(c), std::invalid_argument);
}

TEST(Commands, QnOutput) {
    dsum::ExperimentConfig c;
    c.command = "qn";
    c.qn_N = 10;
    c.check_upto = 10;
    auto body = strip_metadata(run(c));
    EXPECT_EQ(body.substr(0, body.find('\n')), "n,q_formula,q_bruteforce,match,cumulative_sum");
    EXPECT_NE(body.find("\n1,1,1,"), std::string::npos);
    EXPECT_NE(body.find("\n10,"), std::string::npos);
    EXPECT_EQ(body.substr(body.rfind(',') + 1), "32\n");
}

TEST(Commands, DiscrepancyOutput) {
    dsum::ExperimentConfig c;
    c.command = "discrepancy";
    c.M = 2;
    c.N = 2;
    auto out = run(c);
    EXPECT_NE(out.find("# config_hash: fnv1a64:"), std::string::npos);
    auto body = strip_metadata(out);
    EXPECT_NE(body.find("\n12,2,2,\"setM=full;setN=full;windows=full\",2,1,0.5,"), std::string::npos) << body;
    c.rho = "pi";
    EXPECT_NE(run(c).find("heuristic for rho = pi"), std::string::npos);
}

TEST(Commands, ExpsumOutput) {
    dsum::ExperimentConfig c;
    c.command = "expsum";
    c.M = 2;
    c.N = 2;
    auto body = strip_metadata(run(c));
    EXPECT_NE(body.find("\n2,2,1,,2,0,"), std::string::npos) << body;
    c.kind = "X";
    EXPECT_THROW(run(c), std::invalid_argument);
}

TEST(Commands, SelftestSmallPasses) {
    dsum::ExperimentConfig c;
    c.command = "selftest";
    auto out = run(c);
    EXPECT_EQ(out.find(",FAIL"), std::string::npos);
    EXPECT_NE(out.find("check,cases,failures,status"), std::string::npos);
}

TEST(Commands, ThreadCountDoesNotChangeBytes) {
    std::vector<dsum::ExperimentConfig> cases(4);
    cases[0].command = "qn";
    cases[0].qn_N = 500;
    cases[0].check_upto = 200;
    cases[1].command = "discrepancy";
    cases[1].M = 24;
    cases[1].N = 40;
    cases[1].rho = "sqrt:2";
    cases[2].command = "expsum";
    cases[2].M = 40;
    cases[2].N = 40;
    cases[2].b = {1, 7};
    cases[2].beta = "random:1";
    cases[3].command = "expsum";
    cases[3].kind = "S";
    cases[3].M = 30;
    cases[3].N = 50;
    cases[3].setN = "primes";
    cases[3].windows = "random:5";
    cases[3].a = {0, 2};
    for (auto c : cases) {
        c.block_size = 7;
        c.threads = 1;
        auto ref = run(c);
        for (unsigned t : {2u, 5u}) {
            c.threads = t;
            EXPECT_EQ(run(c), ref) << c.command;
        }
    }
}
