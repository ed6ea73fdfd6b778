#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <vector>

#include "blockaudit/combinatorics.hpp"

using namespace blockaudit;

namespace {

// Partitions of w with parts at most max_part, by explicit recursion.
std::uint64_t brute_partitions(unsigned w, unsigned max_part)
{
    if (w == 0) {
        return 1;
    }
    std::uint64_t n = 0;
    for (unsigned p = std::min(w, max_part); p >= 1; --p) {
        n += brute_partitions(w - p, p);
    }
    return n;
}

std::uint64_t brute_strict(unsigned w, unsigned max_part)
{
    if (w == 0) {
        return 1;
    }
    std::uint64_t n = 0;
    for (unsigned p = std::min(w, max_part); p >= 1; --p) {
        n += brute_strict(w - p, p - 1);
    }
    return n;
}

// b-tuples of partitions of total size w: sum over all size vectors.
BigInt brute_multipartitions(unsigned b, unsigned w)
{
    std::map<std::pair<unsigned, unsigned>, BigInt> memo;
    std::function<BigInt(unsigned, unsigned)> go = [&](unsigned slots, unsigned rest) -> BigInt {
        if (slots == 0) {
            return rest == 0 ? 1 : 0;
        }
        if (auto it = memo.find({slots, rest}); it != memo.end()) {
            return it->second;
        }
        BigInt s = 0;
        for (unsigned i = 0; i <= rest; ++i) {
            s += BigInt(static_cast<unsigned long>(brute_partitions(i, i))) * go(slots - 1, rest - i);
        }
        memo[{slots, rest}] = s;
        return s;
    };
    return go(b, w);
}

// k(ell,a,d,w) straight from its definition.
BigInt k_ell_definition(std::uint64_t ell, unsigned a, std::uint64_t d, unsigned w)
{
    const std::uint64_t q = upow(ell, a);
    const std::uint64_t b0 = d + (q - 1) / d;
    const std::uint64_t b1 = (q - q / ell) / d;
    std::function<BigInt(unsigned, std::uint64_t, bool)> go = [&](unsigned rest, std::uint64_t power,
                                                                  bool first) -> BigInt {
        if (rest == 0) {
            return 1;
        }
        if (power > rest) {
            return 0;
        }
        BigInt s = 0;
        for (unsigned wi = 0; wi * power <= rest; ++wi) {
            s += brute_multipartitions(static_cast<unsigned>(first ? b0 : b1), wi) *
                 go(static_cast<unsigned>(rest - wi * power), power * ell, false);
        }
        return s;
    };
    return go(w, 1, true);
}

} // namespace

TEST(Partitions, MatchRecursiveEnumeration)
{
    for (unsigned w = 0; w <= 40; ++w) {
        EXPECT_EQ(partition_count(w), BigInt(static_cast<unsigned long>(brute_partitions(w, w)))) << w;
        EXPECT_EQ(strict_partition_count(w), BigInt(static_cast<unsigned long>(brute_strict(w, w)))) << w;
    }
}

TEST(Partitions, KnownLargeValue) { EXPECT_EQ(partition_count(100), BigInt(190569292)); }

TEST(Multipartitions, AgreeWithConvolution)
{
    for (unsigned b = 1; b <= 8; ++b) {
        for (unsigned w = 0; w <= 12; ++w) {
            EXPECT_EQ(multipartition_count(b, w), brute_multipartitions(b, w)) << b << "," << w;
        }
    }
}

TEST(Multipartitions, EdgeCases)
{
    EXPECT_EQ(multipartition_count(1, 7), partition_count(7));
    for (unsigned b = 1; b < 20; ++b) {
        EXPECT_EQ(multipartition_count(b, 0), 1);
        EXPECT_EQ(multipartition_count(b, 1), b);
    }
    EXPECT_EQ(multipartition_count(0, 0), 1);
    EXPECT_EQ(multipartition_count(0, 3), 0);
}

TEST(Multipartitions, ProductRule)
{
    // k(b1 + b2, w) = sum_i k(b1, i) k(b2, w - i)
    for (unsigned w = 0; w <= 15; ++w) {
        BigInt s = 0;
        for (unsigned i = 0; i <= w; ++i) {
            s += multipartition_count(3, i) * multipartition_count(4, w - i);
        }
        EXPECT_EQ(multipartition_count(7, w), s);
    }
}

TEST(LAdic, DigitsReconstruct)
{
    for (std::uint64_t ell : {2, 3, 5, 7}) {
        for (std::uint64_t w = 0; w < 200; ++w) {
            const auto digits = l_adic_digits(w, ell);
            std::uint64_t back = 0, power = 1;
            for (auto d : digits.digits) {
                EXPECT_LT(d, ell);
                back += d * power;
                power *= ell;
            }
            EXPECT_EQ(back, w);
        }
    }
}

TEST(LCompositions, CountMatchesEnumeration)
{
    for (std::uint64_t ell : {2, 3, 5}) {
        for (std::uint64_t w = 0; w <= 30; ++w) {
            const auto comps = l_compositions(w, ell);
            EXPECT_EQ(l_composition_count(w, ell), comps.size());
            for (const auto& c : comps) {
                std::uint64_t total = 0, power = 1;
                for (auto x : c.parts) {
                    total += x * power;
                    power *= ell;
                }
                EXPECT_EQ(total, w);
            }
        }
    }
    EXPECT_EQ(l_composition_count(5, 5), 2);
    EXPECT_EQ(l_composition_count(7, 7), 2);
}

TEST(KEll, GoldenValues)
{
    EXPECT_EQ(k_ell(5, 1, 2, 5), 254);
    EXPECT_EQ(k_ell(5, 1, 1, 5), 510);
    EXPECT_EQ(k_ell(5, 1, 2, 5), multipartition_count(4, 5) + multipartition_count(2, 1));
    EXPECT_EQ(k_ell(5, 1, 1, 5), multipartition_count(5, 5) + multipartition_count(4, 1));
}

TEST(KEll, MatchesDefinition)
{
    for (std::uint64_t ell : {3, 5, 7}) {
        for (unsigned a = 1; a <= 2; ++a) {
            for (auto d : divisors(ell - 1)) {
                for (unsigned w = 0; w <= 11; ++w) {
                    EXPECT_EQ(k_ell(ell, a, d, w), k_ell_definition(ell, a, d, w))
                        << ell << "," << a << "," << d << "," << w;
                }
            }
        }
    }
}

TEST(KEll, WeightBelowEllOnlySeesB)
{
    // For w < ell only b = d + (ell^a-1)/d enters, and b is symmetric in d <-> (ell-1)/d when a = 1.
    for (std::uint64_t ell : {5, 7, 11, 13}) {
        for (auto d : divisors(ell - 1)) {
            for (unsigned w = 0; w < ell; ++w) {
                EXPECT_EQ(k_ell(ell, 1, d, w), k_ell(ell, 1, (ell - 1) / d, w));
                EXPECT_EQ(k_ell(ell, 1, d, w), multipartition_count(d + (ell - 1) / d, w));
            }
        }
    }
}

TEST(KEll, SymmetryBreaksAtWeightEll)
{
    // b_1 = (ell - 1)/d is not symmetric, so the first composition with w_1 > 0 splits the values.
    EXPECT_EQ(k_ell(7, 1, 2, 7), multipartition_count(5, 7) + multipartition_count(3, 1));
    EXPECT_EQ(k_ell(7, 1, 3, 7), multipartition_count(5, 7) + multipartition_count(2, 1));
    EXPECT_NE(k_ell(7, 1, 2, 7), k_ell(7, 1, 3, 7));
}

TEST(KEll, RejectsBadParameters)
{
    EXPECT_THROW(k_ell(6, 1, 1, 3), invalid_parameter);
    EXPECT_THROW(k_ell(5, 1, 3, 3), invalid_parameter);
    EXPECT_THROW(k_ell(5, 0, 1, 3), invalid_parameter);
}

TEST(Divisors, Basic)
{
    EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(1), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(detail::divisor_sum(12), 28);
}

TEST(BigIntHelpers, Rounding)
{
    EXPECT_EQ(ceil_div(7, 2), 4);
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(ceil_div(6, 3), 2);
    EXPECT_EQ(ceil(rational(-7, 2)), -3);
    EXPECT_EQ(floor(rational(-7, 2)), -4);
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_EQ(valuation(250, 5), 3);
    EXPECT_THROW(exact_div(7, 2, "test"), arithmetic_inconsistency);
    EXPECT_EQ(rational(6, 4), rational(3, 2));
}
