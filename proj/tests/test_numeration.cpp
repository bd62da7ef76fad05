#include <rectbal/exact_quadratic.hpp>
#include <rectbal/numeration.hpp>

#include <gtest/gtest.h>

using namespace rectbal;

TEST(Zeckendorf, Examples) {
    EXPECT_EQ(zeck_encode(4).digits, "101");
    EXPECT_EQ(zeck_encode(18).digits, "101000");
    EXPECT_EQ(zeck_encode(0).digits, "");
    EXPECT_EQ(zeck_encode(19).digits, "101001");
    EXPECT_EQ(zeck_decode("101000"), 18u);
    EXPECT_EQ(zeck_decode("000101"), 4u);
    EXPECT_EQ(zeck_decode(""), 0u);
}

TEST(Zeckendorf, RejectsAdjacentOnes) {
    EXPECT_THROW(zeck_decode("110"), InvalidRepresentation);
    EXPECT_THROW(zeck_decode("10011"), InvalidRepresentation);
    EXPECT_THROW(zeck_decode("102"), InvalidRepresentation);
}

TEST(Zeckendorf, RoundTripAndGreedy) {
    for (std::uint64_t n = 0; n <= 100000; ++n) {
        const auto rep = zeck_encode(n);
        ASSERT_EQ(zeck_decode(rep.digits), n);
        if (n > 0) {
            ASSERT_EQ(rep.digits[0], '1');
            // The leading digit is the largest Fibonacci number not above n.
            const std::uint64_t lead = fibonacci(rep.digits.size() + 1);
            ASSERT_LE(lead, n);
            ASSERT_GT(fibonacci(rep.digits.size() + 2), n);
        }
    }
}

TEST(Zeckendorf, ShiftGivesFloorNPhi) {
    EXPECT_EQ(zeck_shift(0), 0u);
    EXPECT_EQ(zeck_shift(4), 7u); // 101 -> 1010
    for (std::uint64_t n = 1; n <= 100000; ++n)
        ASSERT_EQ(zeck_shift(n - 1) + 1, floor_n_phi(n)) << n;
    for (std::uint64_t n = 0; n <= 100000; ++n)
        ASSERT_EQ(floor_n_phi_by_shift(n), floor_n_phi(n));
}

TEST(Zeckendorf, FibonacciPredicates) {
    EXPECT_TRUE(is_fibonacci(8));
    EXPECT_FALSE(is_fibonacci(0));
    EXPECT_FALSE(is_fibonacci(4));
    EXPECT_TRUE(is_fibonacci(1));
    EXPECT_TRUE(adjacent_fib(1, 2));
    EXPECT_TRUE(adjacent_fib(2, 3));
    EXPECT_FALSE(adjacent_fib(3, 4));
    EXPECT_FALSE(adjacent_fib(2, 5));
    EXPECT_FALSE(adjacent_fib(3, 2));
}

TEST(Zeckendorf, IndexLists) {
    EXPECT_EQ(fib_index_list(4).indices, (std::vector<unsigned>{4, 2}));
    EXPECT_EQ(fib_index_list(1).indices, (std::vector<unsigned>{2}));
    EXPECT_EQ(fib_index_list(18).indices, (std::vector<unsigned>{7, 5}));
    EXPECT_THROW(fib_index_list(0), EmptyExpansion);
    for (std::uint64_t n = 1; n < 5000; ++n) {
        std::uint64_t sum = 0;
        for (const unsigned a : fib_index_list(n).indices)
            sum += fibonacci(a);
        ASSERT_EQ(sum, n);
    }
}

TEST(Tribonacci, Examples) {
    EXPECT_EQ(trib_encode(5).digits, "101");
    EXPECT_EQ(trib_encode(0).digits, "");
    EXPECT_EQ(trib_encode(7).digits, "1000");
    EXPECT_THROW(trib_decode("111"), InvalidRepresentation);
    EXPECT_EQ(trib_decode("110"), 6u);
}

TEST(Tribonacci, RoundTrip) {
    for (std::uint64_t n = 0; n <= 100000; ++n) {
        const auto d = trib_encode(n).digits;
        ASSERT_EQ(d.find("111"), std::string::npos);
        ASSERT_EQ(trib_decode(d), n);
    }
}

TEST(Negabinary, ExamplesAndRoundTrip) {
    EXPECT_EQ(negabin_encode(3).digits, "111");
    EXPECT_EQ(negabin_encode(-1).digits, "11");
    EXPECT_EQ(negabin_encode(0).digits, "");
    EXPECT_EQ(negabin_encode(6).digits, "11010");
    for (std::int64_t n = -10000; n <= 10000; ++n) {
        const auto d = negabin_encode(n).digits;
        ASSERT_TRUE(d.empty() || d[0] == '1');
        ASSERT_EQ(negabin_decode(d), n);
    }
    EXPECT_THROW(negabin_decode("12"), InvalidRepresentation);
}

TEST(PairWords, EncodeDecodeFormat) {
    const PairWord w = pair_encode(4, 18);
    EXPECT_EQ(format_pair_word(w), "[0,1][0,0][0,1][1,0][0,0][1,0]");
    EXPECT_EQ(parse_pair_word(format_pair_word(w)), w);
    EXPECT_EQ(pair_decode(w), std::make_pair(std::uint64_t{4}, std::uint64_t{18}));
    EXPECT_TRUE(pair_encode(0, 0).empty());
    EXPECT_THROW(parse_pair_word("[0,2]"), InvalidRepresentation);
    EXPECT_THROW(parse_pair_word("[0,1"), InvalidRepresentation);
    for (std::uint64_t m = 0; m < 60; ++m)
        for (std::uint64_t n = 0; n < 60; ++n)
            ASSERT_EQ(pair_decode(pair_encode(m, n)), std::make_pair(m, n));
}
