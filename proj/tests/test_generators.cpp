#include "dsum/generators.hpp"
#include "dsum/oracles.hpp"

#include <gtest/gtest.h>

using dsum::SetSpec;
using dsum::WindowSpec;
using Set = std::vector<std::int64_t>;

TEST(SplitMix64, ReferenceOutputs) {
    dsum::SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(GenSet, Examples) {
    EXPECT_EQ(dsum::gen_set(SetSpec::parse("primes"), 5), (Set{7}));
    EXPECT_EQ(dsum::gen_set(SetSpec::parse("smooth:3"), 8), (Set{9, 12, 16}));
    EXPECT_EQ(dsum::gen_set(SetSpec::parse("full"), 4), (Set{5, 6, 7, 8}));
    EXPECT_EQ(dsum::gen_set(SetSpec::parse("explicit:[8,5,5]"), 4), (Set{5, 8}));
    EXPECT_TRUE(dsum::gen_set(SetSpec::parse("explicit:[]"), 4).empty());
}

TEST(GenSet, Errors) {
    EXPECT_THROW(SetSpec::parse("smooth:1"), std::invalid_argument);
    EXPECT_THROW(SetSpec::parse("random:1.5:3"), std::invalid_argument);
    EXPECT_THROW(SetSpec::parse("prime"), std::invalid_argument);
    EXPECT_THROW(dsum::gen_set(SetSpec::parse("explicit:[4]"), 4), std::invalid_argument);
    EXPECT_THROW(dsum::gen_set(SetSpec::parse("full"), 0), std::invalid_argument);
}

TEST(GenSet, AlwaysInsideHalfOpenInterval) {
    const std::vector<SetSpec> specs{SetSpec::parse("full"), SetSpec::parse("primes"), SetSpec::parse("smooth:7"),
                                     SetSpec::parse("random:0.3:11")};
    for (std::int64_t X = 1; X <= 2000; ++X)
        for (const auto& spec : specs)
            for (auto x : dsum::gen_set(spec, X)) {
                ASSERT_GT(x, X);
                ASSERT_LE(x, 2 * X);
            }
}

// Membership depends only on the element, so anchors whose intervals cover
// (1, 2*10^4] test every element up to 2*10^4.
static const std::vector<std::int64_t> kCoveringAnchors{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024,
                                                        2048, 4096, 8192, 10000};

TEST(GenSet, PrimesMatchTrialDivision) {
    for (auto X : kCoveringAnchors) {
        Set expected;
        for (std::int64_t x = X + 1; x <= 2 * X; ++x)
            if (dsum::oracle::is_prime_trial(static_cast<std::uint64_t>(x))) expected.push_back(x);
        ASSERT_EQ(dsum::gen_set(SetSpec::parse("primes"), X), expected) << X;
    }
}

TEST(GenSet, SmoothMatchesFactorization) {
    for (std::uint64_t Q = 2; Q <= 50; ++Q)
        for (auto X : kCoveringAnchors) {
            Set expected;
            for (std::int64_t x = X + 1; x <= 2 * X; ++x)
                if (dsum::oracle::is_smooth_trial(static_cast<std::uint64_t>(x), Q)) expected.push_back(x);
            ASSERT_EQ(dsum::gen_set(SetSpec::parse("smooth:" + std::to_string(Q)), X), expected) << Q << " " << X;
        }
}

TEST(GenSet, RandomIsSeedDeterministic) {
    auto a = dsum::gen_set(SetSpec::parse("random:0.5:12345"), 1000);
    auto b = dsum::gen_set(SetSpec::parse("random:0.5:12345"), 1000);
    auto c = dsum::gen_set(SetSpec::parse("random:0.5:12346"), 1000);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_NEAR(static_cast<double>(a.size()), 500.0, 60.0);
    EXPECT_TRUE(dsum::gen_set(SetSpec::parse("random:0:1"), 100).empty());
    EXPECT_EQ(dsum::gen_set(SetSpec::parse("random:1:1"), 100).size(), 100u);
}

TEST(SetSpec, RenderRoundTrip) {
    for (const char* s : {"full", "primes", "smooth:7", "random:0.5:12345", "random:0.3:1", "explicit:[3,4,9]",
                          "explicit:[]"}) {
        EXPECT_EQ(SetSpec::parse(s).render(), s);
    }
}

TEST(GenWindows, Examples) {
    Set setN{5, 6, 7};
    for (auto w : dsum::gen_windows(WindowSpec::parse("full"), 4, setN)) EXPECT_EQ(w, (dsum::Window{4, 4}));
    for (auto w : dsum::gen_windows(WindowSpec::parse("constant:5:2"), 4, setN)) EXPECT_EQ(w, (dsum::Window{5, 2}));
    EXPECT_THROW(dsum::gen_windows(WindowSpec::parse("constant:8:2"), 4, setN), std::invalid_argument);
    EXPECT_THROW(dsum::gen_windows(WindowSpec::parse("constant:3:2"), 4, setN), std::invalid_argument);
    EXPECT_THROW(WindowSpec::parse("sometimes"), std::invalid_argument);
}

TEST(GenWindows, RandomSatisfiesBounds) {
    for (std::int64_t M = 1; M <= 64; ++M) {
        Set setN;
        for (std::int64_t n = 65; n <= 128; ++n) setN.push_back(n);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto ws = dsum::gen_windows(WindowSpec::parse("random:" + std::to_string(seed)), M, setN);
            ASSERT_EQ(ws.size(), setN.size());
            for (auto w : ws) {
                ASSERT_LE(M, w.K);
                ASSERT_GE(w.L, 1);
                ASSERT_LE(w.K + w.L, 2 * M);
            }
        }
    }
    EXPECT_EQ(WindowSpec::parse("random:77").render(), "random:77");
    EXPECT_EQ(WindowSpec::parse("constant:5:2").render(), "constant:5:2");
}

TEST(DataTuple, ValidationRejectsBadData) {
    dsum::DataTuple d{dsum::Rho(12), 2, 2, {3, 4}, {3, 4}, {{2, 2}, {2, 2}}};
    EXPECT_NO_THROW(d.validate());
    auto bad = d;
    bad.M = 3;
    EXPECT_THROW(bad.validate(), std::invalid_argument);  // windows and setM now out of range
    bad = d;
    bad.setN = {3, 5};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = d;
    bad.windows[1] = {3, 2};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = d;
    bad.M = 3;
    bad.N = 2;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}
