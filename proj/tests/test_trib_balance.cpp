#include <rectbal/trib_balance.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace rectbal;

TEST(TribBalance, TwoByNListPrefix) {
    const std::vector<std::uint64_t> expected{1, 2, 3, 4, 7, 8, 9, 10, 11, 14, 15};
    EXPECT_EQ(balanced_2xn_list(16, 200'000), expected);
}

TEST(TribBalance, ReportFieldsAndWitness) {
    const auto good = two_balance_scan(2, 3, 50'000);
    EXPECT_TRUE(good.balanced_up_to_horizon());
    EXPECT_FALSE(good.witness().has_value());
    EXPECT_EQ(good.horizon, 50'000u);

    const auto bad = two_balance_scan(2, 5, 50'000);
    ASSERT_FALSE(bad.balanced_up_to_horizon());
    const auto w = bad.witness();
    ASSERT_TRUE(w.has_value());
    const WordTable tr = make_word(SequenceKind::Tribonacci, 60'000);
    EXPECT_EQ(tr.rect_count(w->letter, w->i, 2, 5), w->count_i);
    EXPECT_EQ(tr.rect_count(w->letter, w->j, 2, 5), w->count_j);
    EXPECT_GE(w->count_i - w->count_j, 3u);
}

TEST(TribBalance, SingleRowsInheritWordBalance) {
    const WordTable tr = make_word(SequenceKind::Tribonacci, 100'000 + 201);
    for (std::uint64_t n = 1; n <= 200; ++n)
        ASSERT_TRUE(two_balance_scan(tr, 1, n, 100'000).balanced_up_to_horizon()) << n;
}

TEST(TribBalance, CountsMatchNaive) {
    std::mt19937_64 rng(17);
    const WordTable tr = make_word(SequenceKind::Tribonacci, 5000);
    std::uniform_int_distribution<std::uint64_t> pos(0, 4000), side(1, 20);
    for (int t = 0; t < 1000; ++t) {
        const std::uint64_t i = pos(rng), m = side(rng), n = side(rng);
        std::array<std::uint64_t, 3> naive{};
        for (std::uint64_t k = 0; k < m; ++k)
            for (std::uint64_t l = 0; l < n; ++l)
                ++naive[tr[i + k + l]];
        for (std::size_t c = 0; c < 3; ++c)
            ASSERT_EQ(tr.rect_count(c, i, m, n), naive[c]);
    }
}

TEST(TribBalance, CornerWitnessStructure) {
    const WordTable tr2 = make_word(SequenceKind::TribonacciRecoded, 100'000);
    for (std::uint64_t p = 0; p <= 20; ++p) {
        const CornerWitness w = find_corner_witness(tr2, p, 100'000);
        ASSERT_TRUE(corner_witness_valid(tr2, w)) << p;
        for (std::uint64_t m = 3; m <= p + 3; ++m) {
            const auto [bi, bj] = corner_blocks(tr2, w, m, p + 6 - m);
            const Block3 anti{{{0, 0, 2}, {0, 2, 0}, {2, 0, 0}}};
            const Block3 zero{};
            EXPECT_EQ(bi, anti);
            EXPECT_EQ(bj, zero);
        }
    }
}

TEST(TribBalance, CornerWitnessIsSmallest) {
    const WordTable tr2 = make_word(SequenceKind::TribonacciRecoded, 5000);
    for (std::uint64_t p = 0; p <= 6; ++p) {
        const CornerWitness w = find_corner_witness(tr2, p, 5000);
        // No smaller (i, j) pair works.
        for (std::uint64_t i = 0; i <= w.i; ++i)
            for (std::uint64_t j = 0; j + p + 5 <= 5000; ++j) {
                if (i == w.i && j >= w.j)
                    break;
                ASSERT_FALSE(corner_witness_valid(tr2, {p, i, j})) << p << ' ' << i << ' ' << j;
            }
    }
}

TEST(TribBalance, CornerSearchLimit) {
    EXPECT_THROW(find_corner_witness(40, 30), NotFoundWithinLimit);
    const WordTable tr = make_word(SequenceKind::Tribonacci, 100);
    EXPECT_THROW(find_corner_witness(tr, 0, 100), std::invalid_argument);
}

TEST(TribBalance, NoTwoBalanceSmall) {
    const NoTwoBalanceReport r = verify_no_2balance_3plus(10);
    EXPECT_TRUE(r.all_certified);
    EXPECT_EQ(r.certificates.size(), 36u); // 3 <= m <= n <= 10
    for (const auto& c : r.certificates)
        EXPECT_EQ(c.difference(), 3);
    EXPECT_THROW(verify_no_2balance_3plus(2), std::invalid_argument);
}
