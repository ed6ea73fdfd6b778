#include <gtest/gtest.h>

#include "blockaudit/sweep.hpp"

using namespace blockaudit;

TEST(Config, ParsesSectionsRangesAndKeywords)
{
    const auto cfg = parse_config_string(R"(# comment
name = small
oracle_cap = 5000
[gl]
ell = 5
a = 1..2   # trailing comment
d = divisors
w = 0..3
[exceptional]
family = G2-l3, 2F4-l3
a = 1
)");
    EXPECT_EQ(cfg.name, "small");
    EXPECT_EQ(cfg.oracle_cap, 5000u);
    ASSERT_EQ(cfg.grids.size(), 2u);
    const auto cases = expand(cfg);
    // gl: 2 values of a, 3 divisors, 4 weights; exceptional: 2 families
    EXPECT_EQ(cases.size(), 2u * 3u * 4u + 2u);
}

TEST(Config, Errors)
{
    EXPECT_THROW(parse_config_string("[nosuch]\nw = 1\n"), config_error);
    EXPECT_THROW(parse_config_string("[gl]\nell 5\n"), config_error);
    EXPECT_THROW(parse_config_string("colour = red\n"), config_error);
    EXPECT_THROW(parse_config_string("[gl\n"), config_error);
    EXPECT_THROW(expand(parse_config_string("[gl]\nell = 5\na = 1\nd = 1\n")), config_error);
    EXPECT_THROW(expand(parse_config_string("[gl]\nell = 5\na = 1\nd = 1\nw = 1\nbogus = 2\n")), config_error);
    EXPECT_THROW(expand(parse_config_string("[gl]\nell = 5\na = 1\nd = sometimes\nw = 1\n")), config_error);
    EXPECT_THROW(load_config("/nonexistent/grid.cfg"), config_error);
}

TEST(Config, DefaultCoversAllFamilies)
{
    const auto cfg = default_config();
    std::set<std::string> fams;
    for (const auto& g : cfg.grids) {
        fams.insert(g.family);
    }
    for (const char* f : {"gl", "gu", "sl", "su", "sp", "so-odd", "go-even", "so-even", "symmetric", "alternating",
                          "spin", "exceptional", "e8-d8"}) {
        EXPECT_TRUE(fams.count(f)) << f;
    }
}

TEST(Sweep, GLGridHasNoViolations)
{
    const auto report = run_sweep(parse_config_string("[gl]\nell = 5\na = 1..2\nd = 1, 2, 4\nw = 0..15\n"));
    EXPECT_EQ(report.records.size(), 2u * 3u * 16u);
    EXPECT_EQ(report.violations(), 0u);
    for (const auto& r : report.records) {
        EXPECT_TRUE(holds(r.c2.verdict)) << r.audit_case.label;
    }
}

TEST(Sweep, SymmetricAndExceptionalHaveNoViolations)
{
    const auto report =
        run_sweep(parse_config_string("[symmetric]\np = 3\nw = 0..17\n[exceptional]\nfamily = all\na = 1..8\n"));
    EXPECT_EQ(report.violations(), 0u);
}

TEST(Sweep, OrderIndependentOfThreads)
{
    const auto cfg = parse_config_string("[gl]\nell = 5, 7\na = 1\nd = divisors\nw = 0..12\n[symmetric]\np = 3\nw = 0..9\n");
    SweepOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const std::string a = to_json(run_sweep(cfg, one)).dump();
    const std::string b = to_json(run_sweep(cfg, many)).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_csv(run_sweep(cfg, one)), to_csv(run_sweep(cfg, many)));
}

TEST(Sweep, ReportShape)
{
    const auto report = run_sweep(parse_config_string("name = t\n[gl]\nell = 5\na = 1\nd = 2\nw = 5\n"));
    const auto j = to_json(report);
    EXPECT_EQ(j["config"], "t");
    ASSERT_EQ(j["cases"].size(), 1u);
    EXPECT_EQ(j["cases"][0]["k"], 254);
    EXPECT_EQ(j["summary"]["violations"], 0);
    const std::string csv = to_csv(report);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "case,family,params,k,k0,l,kD,kDprime,k_kind,k0_kind,l_kind,kD_kind,kDprime_kind,c1,c2,c1_lhs,c1_rhs,"
              "c2_lhs,c2_rhs,brauer");
    EXPECT_NE(csv.find("\"GL(ell=5,a=1,d=2,w=5)\""), std::string::npos);
}
