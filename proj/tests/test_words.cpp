#include <rectbal/words.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

using namespace rectbal;

namespace {

std::string prefix_text(const WordTable& w, std::size_t len) {
    std::string s;
    for (std::size_t k = 0; k < len; ++k)
        s += static_cast<char>('0' + w[k]);
    return s;
}

} // namespace

TEST(Words, KnownPrefixes) {
    EXPECT_EQ(prefix_text(make_word(SequenceKind::Fibonacci, 13), 13), "0100101001001");
    EXPECT_EQ(prefix_text(make_word(SequenceKind::SturmianA, 14), 14), "00100101001001");
    EXPECT_EQ(prefix_text(make_word(SequenceKind::Tribonacci, 7), 7), "0102010");
    EXPECT_EQ(prefix_text(make_word(SequenceKind::TribonacciRecoded, 7), 7), "0002000");
    EXPECT_EQ(prefix_text(make_word(SequenceKind::ThueMorse, 8), 8), "01101001");
}

TEST(Words, SymbolExamples) {
    EXPECT_EQ(sturmian_a_symbol(0), 0);
    EXPECT_EQ(sturmian_a_symbol(1), 0);
    EXPECT_EQ(sturmian_a_symbol(3), 0);
    EXPECT_EQ(trib2_symbol(3), 2);
    EXPECT_EQ(trib2_symbol(1), 0);
    EXPECT_EQ(tm_symbol(0), 0);
    for (std::uint64_t k = 0; k < 1000; ++k)
        EXPECT_NE(tm_symbol(2 * k), tm_symbol(2 * k + 1));
}

TEST(Words, FibonacciFloorMatchesMorphism) {
    const std::size_t len = 1'000'000;
    const auto morphic = fibonacci_morphic_prefix(len);
    ASSERT_EQ(morphic.size(), len);
    for (std::size_t i = 0; i < len; ++i)
        ASSERT_EQ(morphic[i], fib_symbol(i)) << i;
}

TEST(Words, TribonacciRepresentationMatchesMorphism) {
    const std::size_t len = 200'000;
    const auto morphic = tribonacci_morphic_prefix(len);
    for (std::size_t i = 0; i < len; ++i)
        ASSERT_EQ(morphic[i], trib_symbol(i)) << i;
}

TEST(Words, ThueMorsePopcountMatchesMorphism) {
    const std::size_t len = 1 << 18;
    const auto morphic = thue_morse_morphic_prefix(len);
    for (std::size_t i = 0; i < len; ++i)
        ASSERT_EQ(morphic[i], tm_symbol(i)) << i;
}

TEST(Words, ThueMorsePairing) {
    const WordTable t = make_word(SequenceKind::ThueMorse, 1'000'000);
    for (std::size_t k = 0; 4 * k + 3 < t.size(); ++k) {
        ASSERT_EQ(t[4 * k] + t[4 * k + 2], 1);
        ASSERT_EQ(t[4 * k + 1] + t[4 * k + 3], 1);
    }
}

TEST(Words, TribonacciWordIsTwoBalanced) {
    const WordTable tr = make_word(SequenceKind::Tribonacci, 100'000);
    for (std::size_t len = 1; len <= 500; ++len)
        for (std::size_t c = 0; c < 3; ++c) {
            std::uint64_t lo = len, hi = 0;
            for (std::size_t b = 0; b + len <= tr.size(); ++b) {
                const std::uint64_t v = tr.factor_count(c, b, len);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            ASSERT_LE(hi - lo, 2u) << "length " << len << " letter " << c;
        }
}

TEST(Words, SturmianAAndFHaveSameFactors) {
    const WordTable a = make_word(SequenceKind::SturmianA, 10'000);
    const WordTable f = make_word(SequenceKind::Fibonacci, 10'000);
    for (std::size_t len = 1; len <= 30; ++len) {
        std::set<std::string> fa, ff;
        for (std::size_t b = 0; b + len <= 10'000; ++b) {
            fa.insert(std::string(a.symbols().begin() + b, a.symbols().begin() + b + len));
            ff.insert(std::string(f.symbols().begin() + b, f.symbols().begin() + b + len));
        }
        ASSERT_EQ(fa, ff) << len;
        ASSERT_EQ(fa.size(), len + 1) << len;
    }
}

TEST(Words, PrefixCounts) {
    const auto fib = prefix_counts(SequenceKind::Fibonacci, 100);
    EXPECT_EQ(fib(1, 8), 3u);
    EXPECT_EQ(fib(0, 0), 0u);
    EXPECT_EQ(fib(1, 0), 0u);
    const auto tr = prefix_counts(SequenceKind::Tribonacci, 100);
    EXPECT_EQ(tr(0, 7), 4u);
    EXPECT_EQ(tr(1, 7), 2u);
    EXPECT_EQ(tr(2, 7), 1u);
    for (std::size_t k = 0; k < 100; ++k) {
        EXPECT_EQ(tr(0, k) + tr(1, k) + tr(2, k), k);
        EXPECT_LE(tr(2, k), tr(2, k + 1));
    }
}

TEST(Words, BudgetIsEnforced) {
    EXPECT_THROW(make_word(SequenceKind::Fibonacci, 1000, 999), BudgetExceeded);
    EXPECT_NO_THROW(make_word(SequenceKind::Fibonacci, 1000, 1000));
    EXPECT_THROW(prefix_counts(SequenceKind::ThueMorse, 100, 10), BudgetExceeded);
}

TEST(Words, KindNames) {
    for (const auto kind : {SequenceKind::Fibonacci, SequenceKind::SturmianA, SequenceKind::Tribonacci,
                            SequenceKind::TribonacciRecoded, SequenceKind::ThueMorse})
        EXPECT_EQ(parse_kind(kind_name(kind)), kind);
    EXPECT_FALSE(parse_kind("nope").has_value());
}
