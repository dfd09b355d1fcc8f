#include "dsum/discrepancy.hpp"
#include "dsum/generators.hpp"
#include "dsum/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using dsum::ExactRational;

namespace {

dsum::DataTuple full_tuple(std::int64_t M, std::int64_t N, const std::string& rho = "12") {
    return dsum::make_data_tuple(dsum::Rho::parse(rho), M, N, dsum::SetSpec::parse("full"), dsum::SetSpec::parse("full"),
                                 dsum::WindowSpec::parse("full"));
}

std::vector<ExactRational> random_points(dsum::SplitMix64& rng, std::size_t J, std::int64_t den) {
    std::vector<ExactRational> g;
    for (std::size_t i = 0; i < J; ++i)
        g.emplace_back(static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(den)), den);
    return g;
}

}  // namespace

TEST(QualifyingPairs, Example) {
    dsum::DataTuple D{dsum::Rho(12), 2, 2, {3, 4}, {3, 4}, {{2, 2}, {2, 2}}};
    D.validate();
    auto pairs = dsum::qualifying_pairs(D);
    std::vector<std::pair<std::int64_t, std::int64_t>> expected{{4, 3}, {3, 4}};
    EXPECT_EQ(pairs, expected);
    EXPECT_EQ(dsum::count_N_D(D), 2u);
}

TEST(QualifyingPairs, CountMatchesDoubleLoop) {
    EXPECT_EQ(dsum::count_N_D(full_tuple(8, 8)), dsum::oracle::count_pairs_double_loop(full_tuple(8, 8)));
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto D = dsum::make_data_tuple(dsum::Rho(12), 10 + static_cast<std::int64_t>(seed), 60,
                                       dsum::SetSpec::parse("random:0.6:" + std::to_string(seed)),
                                       dsum::SetSpec::parse("random:0.8:" + std::to_string(seed + 1000)),
                                       dsum::WindowSpec::parse("random:" + std::to_string(seed)));
        ASSERT_EQ(dsum::count_N_D(D), dsum::oracle::count_pairs_double_loop(D)) << seed;
    }
}

TEST(FracPoints, SmallExamples) {
    // Pairs (3, 4) and (4, 3): {12 s(3,4)} = 1/2, {12 s(4,3)} = 2/3.
    auto pts = dsum::frac_points_exact(full_tuple(2, 2));
    auto values = pts.values;
    std::sort(values.begin(), values.end());
    ASSERT_EQ(values.size(), 2u);
    EXPECT_EQ(values[0], ExactRational(1, 2));
    EXPECT_EQ(values[1], ExactRational(2, 3));

    dsum::DataTuple one{dsum::Rho(12), 1, 1, {2}, {2}, {{1, 1}}};
    one.validate();
    EXPECT_EQ(dsum::count_N_D(one), 0u);  // gcd(2, 2) = 2

    dsum::DataTuple single{dsum::Rho(12), 1, 2, {2}, {3}, {{1, 1}}};
    single.validate();
    auto p = dsum::frac_points_exact(single);
    ASSERT_EQ(p.J(), 1u);
    EXPECT_EQ(p.values[0], ExactRational(1, 3));  // s(2, 3) = -1/18
}

TEST(FracPoints, MatchesHickersonAndThreads) {
    auto D = full_tuple(20, 30);
    auto pts = dsum::frac_points_exact(D, 1);
    auto pairs = dsum::qualifying_pairs(D);
    ASSERT_EQ(pts.J(), pairs.size());
    std::vector<ExactRational> expected;
    for (auto [m, n] : pairs) expected.push_back(dsum::hickerson_frac(m, n));
    auto a = pts.values, b = expected;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(dsum::frac_points_exact(D, 4).values, pts.values);
}

TEST(StarDiscrepancy, Examples) {
    EXPECT_EQ(dsum::star_discrepancy(std::vector<ExactRational>{}), ExactRational(0));
    EXPECT_EQ(dsum::star_discrepancy(std::vector<ExactRational>{ExactRational(1, 2)}), ExactRational(1, 2));
    EXPECT_EQ(dsum::star_discrepancy(std::vector<ExactRational>{ExactRational(0), ExactRational(1, 2)}), ExactRational(1));
}

TEST(StarDiscrepancy, IdenticalPoints) {
    // J copies of 0 give J; copies of a point c > 0 give J max(c, 1 - c).
    for (std::int64_t J = 1; J <= 20; ++J) {
        EXPECT_EQ(dsum::star_discrepancy(std::vector<ExactRational>(J, ExactRational(0))), ExactRational(J));
        std::vector<ExactRational> third(J, ExactRational(1, 3));
        EXPECT_EQ(dsum::star_discrepancy(third), ExactRational(2 * J, 3));
        EXPECT_NEAR(dsum::oracle::star_discrepancy_grid(third), 2.0 * J / 3.0, 1e-12);
    }
}

TEST(StarDiscrepancy, UniformGridIsOne) {
    for (std::int64_t J = 1; J <= 50; ++J) {
        std::vector<ExactRational> g;
        for (std::int64_t k = 0; k < J; ++k) g.emplace_back(k, J);
        EXPECT_EQ(dsum::star_discrepancy(g), ExactRational(1));
    }
}

TEST(StarDiscrepancy, MatchesOraclesRandom) {
    dsum::SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::size_t J = rng.next() % 40;
        std::int64_t den = 1 + static_cast<std::int64_t>(rng.next() % 50);
        auto g = random_points(rng, J, den);
        ExactRational sorted = dsum::star_discrepancy(g);
        ASSERT_EQ(sorted, dsum::oracle::star_discrepancy_candidates(g)) << t;
        ASSERT_NEAR(sorted.to_double(), dsum::oracle::star_discrepancy_grid(g, 200), 1e-9) << t;
    }
}

TEST(StarDiscrepancy, PermutationInvariant) {
    dsum::SplitMix64 rng(12);
    std::mt19937_64 shuffler(12);
    for (int t = 0; t < 50; ++t) {
        auto g = random_points(rng, 30, 97);
        auto ref = dsum::star_discrepancy(g);
        std::shuffle(g.begin(), g.end(), shuffler);
        ASSERT_EQ(dsum::star_discrepancy(g), ref);
    }
}

TEST(StarDiscrepancy, HighRealMatchesExact) {
    auto D = full_tuple(16, 24);
    auto exact = dsum::star_discrepancy(dsum::frac_points_exact(D));
    auto high = dsum::star_discrepancy(dsum::frac_points(D));
    EXPECT_NEAR(exact.to_double(), high.convert_to<double>(), 1e-30);
}

TEST(DeltaD, Examples) {
    auto r = dsum::delta_D(full_tuple(2, 2));
    EXPECT_EQ(r.N_D, 2u);
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(*r.exact, ExactRational(1));
    EXPECT_DOUBLE_EQ(r.value, 1.0);

    auto irr = dsum::delta_D(full_tuple(8, 8, "pi"));
    EXPECT_FALSE(irr.exact.has_value());
    EXPECT_EQ(irr.N_D, dsum::count_N_D(full_tuple(8, 8)));
}

TEST(DeltaD, BoundedByNDAndThreadInvariant) {
    for (std::int64_t M : {4, 8, 16}) {
        auto D = full_tuple(M, 2 * M);
        auto r = dsum::delta_D(D, 1);
        EXPECT_LE(r.value, static_cast<double>(r.N_D));
        EXPECT_GE(r.value, 0.0);
        EXPECT_EQ(dsum::delta_D(D, 3).exact, r.exact);
    }
}

TEST(CountA, AtOneIsND) {
    for (std::int64_t M : {3, 7, 12}) {
        auto D = full_tuple(M, M + 5);
        EXPECT_EQ(dsum::count_A(D, ExactRational(1)), dsum::count_N_D(D));
        auto Dpi = full_tuple(M, M + 5, "pi");
        EXPECT_EQ(dsum::count_A(Dpi, ExactRational(1)), dsum::count_N_D(Dpi));
    }
}

TEST(CountA, DiscrepancyIsSupOverLambda) {
    auto D = full_tuple(10, 14);
    auto pts = dsum::frac_points_exact(D);
    ExactRational J(static_cast<std::int64_t>(pts.J()));
    ExactRational best(0);
    for (std::int64_t k = 0; k <= 840; ++k) {
        ExactRational lam(k, 840);
        ExactRational diff = ExactRational(static_cast<std::int64_t>(dsum::count_A(D, lam))) - lam * J;
        if (diff < ExactRational(0)) diff = ExactRational(0) - diff;
        if (diff > best) best = diff;
    }
    EXPECT_LE(best, dsum::star_discrepancy(pts));
}

TEST(ErdosTuran, Examples) {
    EXPECT_NEAR(dsum::erdos_turan_rhs(std::vector<ExactRational>{ExactRational(0)}, 1), 3.5, 1e-12);
    EXPECT_NEAR(dsum::erdos_turan_rhs(std::vector<ExactRational>(4, ExactRational(0)), 2), 58.0 / 3.0, 1e-12);
    EXPECT_EQ(dsum::erdos_turan_rhs(std::vector<ExactRational>{}, 3), 0.0);
    EXPECT_THROW(dsum::erdos_turan_rhs(std::vector<ExactRational>{ExactRational(0)}, 0), std::invalid_argument);
}

TEST(ErdosTuran, DominatesDiscrepancy) {
    dsum::SplitMix64 rng(13);
    for (int t = 0; t < 100; ++t) {
        auto g = random_points(rng, 1 + rng.next() % 60, 1 + static_cast<std::int64_t>(rng.next() % 200));
        double d = dsum::star_discrepancy(g).to_double();
        for (std::int64_t H : {1, 2, 5, 20}) ASSERT_LE(d, dsum::erdos_turan_rhs(g, H) + 1e-9) << t << " " << H;
    }
    for (std::int64_t M : {8, 32}) {
        auto pts = dsum::frac_points_exact(full_tuple(M, 4 * M));
        double d = dsum::star_discrepancy(pts).to_double();
        EXPECT_LE(d, dsum::erdos_turan_rhs(pts, dsum::et_h_choice(M, 4 * M)));
    }
}

TEST(Bounds, Examples) {
    EXPECT_DOUBLE_EQ(dsum::thm1_bound(1, 1, 1, 1), 2.0);
    EXPECT_NEAR(dsum::thm1_bound(16, 64, 100, 40), 10.0 * std::pow(16, 0.3) * std::pow(64, 0.65) + 40 * 0.5, 1e-9);
    EXPECT_DOUBLE_EQ(dsum::cor1_bound(16, 64, 100), dsum::thm1_bound(16, 64, 100, 100));
    EXPECT_DOUBLE_EQ(dsum::cor2_bound(1, 1), 2.0);
    EXPECT_NEAR(dsum::cor2_bound(16, 16), std::pow(16, 1.95) + 256.0, 1e-9);
}

TEST(EtHChoice, Examples) {
    EXPECT_EQ(dsum::et_h_choice(4, 64), 4);
    for (std::int64_t N : {1, 7, 1000}) EXPECT_EQ(dsum::et_h_choice(N, N), 1);
    EXPECT_EQ(dsum::et_h_choice(1, 10), 3);
    EXPECT_EQ(dsum::et_h_choice(1, 1000000000000LL), 1000000);
    EXPECT_THROW(dsum::et_h_choice(5, 4), std::invalid_argument);
    EXPECT_THROW(dsum::et_h_choice(0, 4), std::invalid_argument);
}
