#include <gtest/gtest.h>

#include <set>

#include "blockaudit/bounds.hpp"

using namespace blockaudit;

namespace {

std::vector<BoundCheckResult> outside(const std::vector<BoundCheckResult>& rs)
{
    std::vector<BoundCheckResult> out;
    for (const auto& r : rs) {
        if (r.outcome == Certified::fails && !r.in_exception) {
            out.push_back(r);
        }
    }
    return out;
}

bool contains(const Interval& x, const Rational& v)
{
    return mpfr_cmp_q(x.lo(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(x.hi(), v.get_mpq_t()) >= 0;
}

} // namespace

TEST(Interval, EnclosesExactValues)
{
    for (mpfr_prec_t p : {64, 128, 512}) {
        EXPECT_TRUE(contains(Interval::from_decimal("0.1", p), rational(1, 10)));
        EXPECT_TRUE(contains(Interval::from_decimal("0.73", p), rational(73, 100)));
        EXPECT_TRUE(contains(Interval::from_decimal("0.9", p), rational(9, 10)));
        EXPECT_TRUE(contains(Interval::from_rational(rational(1, 3), p), rational(1, 3)));
        EXPECT_TRUE(contains(exp(log(Interval::from_integer(7, p))), rational(7)));
        EXPECT_TRUE(contains(Interval::from_integer(3, p) / Interval::from_integer(7, p), rational(3, 7)));
        EXPECT_TRUE(contains(pow(Interval::from_integer(2, p), Interval::from_integer(10, p)), rational(1024)));
    }
}

TEST(Interval, CertifyNeverDecidesTies)
{
    const auto two = [](mpfr_prec_t p) { return exp(log(Interval::from_integer(2, p))); };
    const auto exact_two = [](mpfr_prec_t p) { return Interval::from_integer(2, p); };
    const auto c = certify_le(two, exact_two, 64, 256);
    EXPECT_EQ(c.outcome, Certified::inconclusive);
    const auto three = [](mpfr_prec_t p) { return Interval::from_integer(3, p); };
    EXPECT_EQ(certify_le(two, three).outcome, Certified::holds);
    EXPECT_EQ(certify_le(three, two).outcome, Certified::fails);
}

TEST(Bounds, PassingSuites)
{
    for (auto id : {LemmaId::L5_1a, LemmaId::L5_1b, LemmaId::L5_2a, LemmaId::L5_3, LemmaId::L5_5, LemmaId::P2_3,
                    LemmaId::L4_1}) {
        const auto rs = verify_bounds(id);
        const auto s = summarize(id, rs);
        EXPECT_TRUE(s.pass) << to_string(id);
        EXPECT_EQ(s.fails_outside_exception, 0u) << to_string(id);
        EXPECT_EQ(s.inconclusive, 0u) << to_string(id);
        EXPECT_GT(s.points, 0u);
    }
}

TEST(Bounds, L51aMatchesIntegerCheck)
{
    for (const auto& r : verify_bounds(LemmaId::L5_1a)) {
        const unsigned b = r.point["b"], w = r.point["w"];
        EXPECT_EQ(r.holds(), multipartition_count(b, w) <= ipow(b, w));
    }
}

TEST(Bounds, L53ExceptionsContainTheFailures)
{
    const auto rs = verify_bounds(LemmaId::L5_3);
    std::set<std::tuple<unsigned, unsigned, unsigned>> fails; // (ell^a, d, w)
    for (const auto& r : rs) {
        if (r.outcome == Certified::fails) {
            EXPECT_TRUE(r.in_exception);
            const std::uint64_t ell = r.point["ell"];
            const unsigned a = r.point["a"];
            fails.insert({static_cast<unsigned>(upow(ell, a)), r.point["d"].get<unsigned>(), r.point["w"].get<unsigned>()});
        }
    }
    EXPECT_TRUE(fails.count({5, 1, 5}));
    EXPECT_TRUE(fails.count({5, 2, 5}));
    EXPECT_TRUE(fails.count({25, 1, 5}));
}

TEST(Bounds, L54DirectCheckAtFive)
{
    // k(5,1,2,5) = k(4,5) + k(2,1) = 254 and the bound holds there
    bool seen = false;
    for (const auto& r : verify_bounds(LemmaId::L5_4)) {
        if (r.point["ell"] == 5 && r.point["a"] == 1 && r.point["d"] == 2 && r.point["w"] == 5) {
            EXPECT_EQ(r.lhs, "254");
            EXPECT_TRUE(r.holds());
            seen = true;
        }
    }
    EXPECT_TRUE(seen);
}

TEST(Bounds, L54RequiredFailure)
{
    const auto rs = verify_bounds(LemmaId::L5_4);
    EXPECT_TRUE(summarize(LemmaId::L5_4, rs).required_failure_seen);
    bool seen = false;
    for (const auto& r : rs) {
        if (r.point["ell"] == 5 && r.point["a"] == 1 && r.point["d"] == 1 && r.point["w"] == 5) {
            EXPECT_EQ(r.outcome, Certified::fails);
            EXPECT_TRUE(r.in_exception);
            EXPECT_EQ(r.lhs, "510");
            seen = true;
        }
    }
    EXPECT_TRUE(seen);
}

// The next three tests freeze the certified failures that fall outside the
// stated exception sets. They are genuine counterexamples to the inequalities
// as stated, not artefacts of the evaluation.

TEST(Bounds, L52bFailsAtSixFive)
{
    const auto out = outside(verify_bounds(LemmaId::L5_2b));
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].point["b"], 6);
    EXPECT_EQ(out[0].point["w"], 5);
    EXPECT_EQ(out[0].lhs, "918");
    // 6^5 / 918 < 6^{0.47*5/ln 6} = e^{2.35}; the Taylor partial sum is a rational lower bound.
    EXPECT_EQ(multipartition_count(6, 5), 918);
    const Rational x = rational(235, 100);
    Rational taylor = 0, term = 1;
    for (int j = 0; j <= 4; ++j) {
        taylor += term;
        term = term * x / (j + 1);
    }
    EXPECT_LT(rational(7776, 918), taylor);
}

TEST(Bounds, L54FailsForLargeDivisorsAtAEqualsOne)
{
    const auto out = outside(verify_bounds(LemmaId::L5_4));
    std::set<std::tuple<std::uint64_t, std::uint64_t, unsigned>> pts;
    for (const auto& r : out) {
        EXPECT_EQ(r.point["a"], 1);
        const std::uint64_t ell = r.point["ell"], d = r.point["d"];
        EXPECT_GT(d * d, ell - 1); // only d beyond sqrt(ell - 1)
        pts.insert({ell, d, r.point["w"].get<unsigned>()});
    }
    EXPECT_EQ(pts, (std::set<std::tuple<std::uint64_t, std::uint64_t, unsigned>>{{7, 3, 7}, {11, 5, 11}, {13, 6, 13}}));
    EXPECT_EQ(k_ell(7, 1, 3, 7), 2992);
}

TEST(Bounds, T42FailsAtTwistedE6OverTwo)
{
    const auto out = outside(verify_bounds(LemmaId::T4_2_arith));
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].point["type"], "2E6");
    EXPECT_EQ(out[0].point["q"], 2);
    EXPECT_EQ(out[0].point["d"], 3);
    EXPECT_EQ(out[0].point["inequality"], "c2");
    // 27.2 * 3 > 2^6 - 1
    EXPECT_GT(272 * 3, 10 * 63);
}

TEST(Bounds, CenterOrders)
{
    EXPECT_EQ(center_order("A", 4, 11), 5);
    EXPECT_EQ(center_order("A", 4, 7), 1);
    EXPECT_EQ(center_order("D", 4, 3), 4);
    EXPECT_EQ(center_order("D", 5, 3), 2);
    EXPECT_EQ(center_order("E7", 7, 4), 1);
    EXPECT_EQ(center_order("2E6", 6, 2), 3);
    EXPECT_EQ(center_order("G2", 2, 5), 1);
    EXPECT_EQ(prime_powers_up_to(10), (std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9}));
}

TEST(Bounds, SummaryJsonAndParsing)
{
    for (auto id : all_lemmas()) {
        EXPECT_EQ(parse_lemma(to_string(id)), id);
    }
    EXPECT_FALSE(parse_lemma("L9.9"));
    const auto s = summarize(LemmaId::L5_5, verify_bounds(LemmaId::L5_5));
    const auto j = to_json(s);
    EXPECT_EQ(j["lemma"], "L5.5");
    EXPECT_EQ(j["pass"], true);
}

TEST(Bounds, SmallerGridIsSubset)
{
    BoundGrid g;
    g.l51_b_max = 5;
    g.l51_w_max = 5;
    const auto rs = verify_bounds(LemmaId::L5_1a, g);
    EXPECT_FALSE(rs.empty());
    EXPECT_LT(rs.size(), verify_bounds(LemmaId::L5_1a).size());
}
