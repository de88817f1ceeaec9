#include <gtest/gtest.h>
#include <numeric>

#include "sidonpds/sidon_core.hpp"
#include "test_util.hpp"

using namespace sidonpds;
using testutil::for_each_subset;

TEST(SidonCore, IsSidonMatchesSumOracle) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> x(0, 40);
    std::uniform_int_distribution<std::size_t> len(0, 7);
    for (int t = 0; t < 5000; ++t) {
        Elems xs(len(rng));
        for (auto& e : xs) e = x(rng);
        EXPECT_EQ(is_sidon(xs), testutil::sidon_by_sums(xs));
    }
}

TEST(SidonCore, SetConstruction) {
    const SidonSet a{11, 0, 3, 1};
    EXPECT_EQ(a.elems(), (Elems{0, 1, 3, 11}));
    EXPECT_EQ(a.to_string(), "{0, 1, 3, 11}");
    EXPECT_THROW(SidonSet({0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(SidonSet(Elems{-1, 0, 2}), std::invalid_argument);
    EXPECT_EQ(SidonSet(Elems{3, 3, 5}).size(), 2u);  // duplicates collapse
}

TEST(SidonCore, DiffSignature) {
    EXPECT_EQ(diff_signature(SidonSet{0, 1, 3, 11}).diffs, (std::vector<i64>{1, 2, 3, 8, 10, 11}));
    EXPECT_EQ(diff_signature(SidonSet{0, 1, 4, 11}).diffs, (std::vector<i64>{1, 3, 4, 7, 10, 11}));
}

TEST(SidonCore, VerifyPdsEqualsDistinctnessAtExactCardinality) {
    // every subset for v <= 13, and a random sample of subsets for v = 21, 31
    for (auto [v, k] : {std::pair<i64, std::size_t>{3, 2}, {7, 3}, {13, 4}})
        for_each_subset(v, k, [&](const Elems& xs) {
            EXPECT_EQ(verify_pds(xs, v), sidon_distinct_mod(xs, v));
            EXPECT_EQ(verify_pds(xs, v), testutil::pds_by_tally(xs, v));
        });
    std::mt19937_64 rng(31);
    for (auto [v, k] : {std::pair<i64, std::size_t>{21, 5}, {31, 6}}) {
        std::size_t hits = 0;
        for (int t = 0; t < 20000; ++t) {
            Elems all(static_cast<std::size_t>(v));
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            Elems xs(all.begin(), all.begin() + static_cast<long>(k));
            std::sort(xs.begin(), xs.end());
            const bool pds = verify_pds(xs, v);
            hits += pds;
            EXPECT_EQ(pds, sidon_distinct_mod(xs, v));
            EXPECT_EQ(pds, testutil::pds_by_tally(xs, v));
        }
        EXPECT_GT(hits, 0u) << "sample never hit a PDS at v=" << v;
    }
}

TEST(SidonCore, VerifyPdsCounts) {
    // brute counts of all PDSs: each Singer orbit member, by tally
    for (auto [v, k, expected] : {std::tuple<i64, std::size_t, int>{7, 3, 14}, {13, 4, 52}, {21, 5, 42}}) {
        int n = 0;
        for_each_subset(v, k, [&](const Elems& xs) { n += verify_pds(xs, v); });
        EXPECT_EQ(n, expected) << v;
    }
}

TEST(SidonCore, VerifyPdsRejects) {
    EXPECT_TRUE(verify_pds({0, 1, 3}, 7));
    EXPECT_FALSE(verify_pds({0, 1, 3}, 8));
    EXPECT_FALSE(verify_pds({0, 1, 3, 9}, 7));
    EXPECT_FALSE(verify_pds({0, 1, 10}, 7));  // out of range
    EXPECT_TRUE(verify_pds(Pds{13, {0, 1, 3, 9}}));
}

TEST(SidonCore, SidonDistinctMod) {
    const SidonSet a{0, 1, 3, 11};
    EXPECT_FALSE(sidon_distinct_mod(a, 13));  // 11 - 0 = -2 = 1 - 3 mod 13
    EXPECT_FALSE(sidon_distinct_mod(a, 21));  // 11 - 1 = 0 - 11 mod 21
    EXPECT_TRUE(sidon_distinct_mod(a, 31));
    EXPECT_THROW(sidon_distinct_mod(a, 1), std::invalid_argument);
    // modulus beyond twice the diameter never collides
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto xs = testutil::random_sidon(rng, 5, 40);
        ASSERT_FALSE(xs.empty());
        EXPECT_TRUE(sidon_distinct_mod(xs, 2 * xs.back() + 1));
    }
}

TEST(SidonCore, TransformsPreserveSidon) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const SidonSet s(testutil::random_sidon(rng, 5, 60));
        for (i64 k = 1; k <= 5; ++k) {
            const auto d = dilate(s, k);
            EXPECT_TRUE(testutil::sidon_by_sums(d.elems()));
            auto sig = diff_signature(s).diffs;
            for (auto& x : sig) x *= k;
            EXPECT_EQ(diff_signature(d).diffs, sig);
        }
        const auto r = reflect(s);
        EXPECT_EQ(diff_signature(r), diff_signature(s));
        EXPECT_EQ(reflect(r), s);
        EXPECT_EQ(r.min(), 0);
        EXPECT_EQ(normalize(s), s);
    }
    EXPECT_EQ(reflect(SidonSet{0, 1, 3, 11}), (SidonSet{0, 8, 10, 11}));
    EXPECT_EQ(normalize(SidonSet{5, 6, 8, 16}), (SidonSet{0, 1, 3, 11}));
    EXPECT_THROW(dilate(SidonSet{0, 1}, 0), std::invalid_argument);
}

TEST(SidonCore, AffineImage) {
    EXPECT_EQ(affine_image({0, 1, 3}, 2, 1, 7), (Elems{0, 1, 3}));  // 2 is a multiplier of the Fano set, up to shift
    EXPECT_EQ(affine_image({0, 1, 3}, -1, 0, 7), (Elems{0, 4, 6}));
}
