#include "etass/adams.hpp"
#include "etass/bockstein.hpp"
#include "shared_pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using etass::Bidegree;
using etass::Monomial;
using etass::testing::pipeline64;

namespace {

Monomial mono(std::string_view s) { return Monomial::parse(s); }

const etass::TorsionTower* tower_at(const std::vector<etass::TorsionTower>& towers, const Monomial& g)
{
    for (const auto& t : towers)
        if (t.generator == g)
            return &t;
    return nullptr;
}

const etass::AdamsDiffRule* rule_from(const std::vector<etass::AdamsDiffRule>& rules, const Monomial& src)
{
    for (const auto& r : rules)
        if (r.source == src)
            return &r;
    return nullptr;
}

} // namespace

TEST(AdamsRules, WorkedDifferentials)
{
    const etass::Truncation t;
    const auto d3 = etass::dr_rule(3, t);
    const auto* a = rule_from(d3, mono("rho^7v4"));
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->target, mono("P^2v2^2"));
    EXPECT_EQ(a->target_torsion(), 3U);
    const auto* b = rule_from(d3, mono("rho^7P^8v4"));
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->target, mono("P^10v2^2"));

    const auto d4 = etass::dr_rule(4, t);
    const auto* c = rule_from(d4, mono("rho^22v5"));
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->target, mono("P^6v2^2"));
    EXPECT_EQ(c->target_torsion(), 3U);

    const auto d5 = etass::dr_rule(5, t);
    ASSERT_EQ(d5.size(), 1U);
    EXPECT_EQ(d5[0].source, mono("rho^53v6"));
    EXPECT_EQ(d5[0].target, mono("P^14v2^2"));
}

TEST(AdamsRules, DegreeOfEveryRule)
{
    etass::Truncation t;
    t.mw_max = 300;
    for (int r = 3; r <= etass::adams_r_max(t); ++r)
        for (const auto& rule : etass::dr_rule(r, t)) {
            ASSERT_EQ(rule.target.bidegree() - rule.source.bidegree(), (Bidegree{-1, r - 1})) << rule.source.label();
            ASSERT_EQ(rule.target.min_v(), rule.n - r + 1);
            ASSERT_LE(rule.source.bidegree().mw, t.internal_mw());
        }
}

TEST(AdamsRules, LastPage)
{
    etass::Truncation t;
    EXPECT_EQ(etass::adams_r_max(t), 5);
    t.mw_max = 256;
    EXPECT_EQ(etass::adams_r_max(t), 7);
    t.mw_max = 10;
    EXPECT_EQ(etass::adams_r_max(t), 2);
}

TEST(Adams, E3MatchesClosedForm)
{
    const auto& p = pipeline64();
    const auto rep = etass::compare_towers("adams.e3", p.adams.e3, etass::closed_form_e3(p.trunc));
    EXPECT_TRUE(rep.ok()) << rep.summary();
    const auto towers = etass::compute_towers(p.adams.e3);
    // rho^3 P^(4k) v3 at (7,4) + k(16,16), torsion 4.
    for (int k = 0; 7 + 16 * k <= 64; ++k) {
        Monomial g;
        g.set_rho(3).set_p(4 * k).set_v(3, 1);
        const auto* tw = tower_at(towers, g);
        ASSERT_NE(tw, nullptr) << g.label();
        EXPECT_EQ(tw->bottom, (Bidegree{7 + 16 * k, 4 + 16 * k}));
        EXPECT_EQ(tw->length, 4);
    }
    // P^(2(2j+1)) v2^2 at (6,2) + (2j+1)(8,8), torsion 3.
    for (int j = 0; 6 + 8 * (2 * j + 1) <= 64; ++j) {
        Monomial g;
        g.set_p(2 * (2 * j + 1)).set_v(2, 2);
        const auto* tw = tower_at(towers, g);
        ASSERT_NE(tw, nullptr) << g.label();
        EXPECT_EQ(tw->bottom, (Bidegree{6 + 8 * (2 * j + 1), 2 + 8 * (2 * j + 1)}));
        EXPECT_EQ(tw->length, 3);
    }
}

TEST(Adams, EinftyMatchesClosedForm)
{
    const auto& p = pipeline64();
    const auto rep = etass::compare_towers("adams.einfty", p.adams.einfty, etass::closed_form_adams_einfty(p.trunc));
    EXPECT_TRUE(rep.ok()) << rep.summary();
    struct Spot
    {
        int mw, c, length;
    };
    for (const Spot s : {Spot{15, 11, 5}, Spot{31, 26, 6}, Spot{63, 57, 7}}) {
        const auto it = std::find_if(p.adams.towers.begin(), p.adams.towers.end(),
                                     [&](const etass::TorsionTower& t) { return t.bottom.mw == s.mw; });
        ASSERT_NE(it, p.adams.towers.end()) << s.mw;
        EXPECT_EQ(it->bottom.c, s.c);
        EXPECT_EQ(it->length, s.length);
    }
}

TEST(Adams, PagesAndDifferentials)
{
    const auto& p = pipeline64();
    ASSERT_EQ(p.adams.pages.size(), 4U); // E2 .. E5
    for (std::size_t i = 0; i < p.adams.pages.size(); ++i) {
        EXPECT_EQ(p.adams.pages[i].r(), static_cast<int>(i) + 2);
        EXPECT_EQ(p.adams.pages[i].diff_shift(), (Bidegree{-1, static_cast<int>(i) + 1}));
    }
    EXPECT_EQ(p.adams.einfty.r(), etass::Page::kInfinity);
    EXPECT_TRUE(etass::check_adams_pages(p.adams).ok());
    EXPECT_TRUE(etass::check_e3_products(p.adams).ok());
    EXPECT_TRUE(etass::mod4_vanishing_scan(p.adams.einfty).ok());
    EXPECT_TRUE(etass::exhaustiveness_scan(p.adams).ok());
    EXPECT_TRUE(etass::alternative_target_scan(p.adams).ok());
    EXPECT_TRUE(etass::ext_finiteness_scan(p.adams.einfty).ok());
}

TEST(Adams, ComputeE3AgreesWithTheRun)
{
    etass::Truncation t;
    t.mw_max = 40;
    const auto bock = etass::run_bockstein(t, {false, false});
    const auto e3 = etass::compute_e3(bock.einfty);
    const auto res = etass::run_adams(bock.einfty, {false});
    EXPECT_TRUE(res.pages.empty());
    for (int mw = 0; mw <= t.mw_max; ++mw)
        for (int c = 0; c <= t.c_max(); ++c)
            ASSERT_EQ(e3.dim({mw, c}), res.e3.dim({mw, c})) << mw << "," << c;
}

TEST(Adams, ProjectOntoE3)
{
    const auto& p = pipeline64();
    const Monomial prod = mono("P^2v2^2");
    const auto cls = p.adams.project_e3(prod.bidegree(), etass::Polynomial(prod));
    ASSERT_TRUE(cls.has_value());
    EXPECT_FALSE(cls->is_zero());
    // v3 is not a d2-cycle.
    EXPECT_FALSE(p.adams.project_e3(mono("v3").bidegree(), etass::Polynomial(mono("v3"))).has_value());
}

TEST(DgaOracle, HomologyIsExteriorOnW1)
{
    const auto h = etass::dga_homology(6, 40);
    EXPECT_EQ(h.faithful_degree, 39);
    ASSERT_EQ(h.dims.size(), 40U);
    EXPECT_EQ(h.dims[0], 1U);
    EXPECT_EQ(h.dims[1], 1U);
    for (std::size_t d = 2; d < h.dims.size(); ++d)
        EXPECT_EQ(h.dims[d], 0U) << d;
    EXPECT_TRUE(etass::dga_homology_oracle(6, 40).ok());
    // With few generators the truncation bounds the faithful range.
    EXPECT_EQ(etass::dga_homology(3, 40).faithful_degree, 13);
    EXPECT_TRUE(etass::dga_homology_oracle(3, 40).ok());
}

TEST(DgaOracle, IndependentE2RecomputationAgrees)
{
    const auto& p = pipeline64();
    for (std::uint64_t seed : {1ULL, 2ULL, 0x0e2ULL})
        EXPECT_TRUE(etass::e2_oracle_check(p.adams.e3, 20, seed).ok()) << seed;
}
