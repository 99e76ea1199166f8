#include "etass/bockstein.hpp"
#include "etass/errors.hpp"

#include <gtest/gtest.h>

using etass::Bidegree;
using etass::Monomial;
using etass::Truncation;

namespace {

Truncation window(int mw)
{
    Truncation t;
    t.mw_max = mw;
    return t;
}

} // namespace

TEST(BocksteinRule, FamilyDifferentials)
{
    EXPECT_EQ(etass::bockstein_page(2), 3);
    EXPECT_EQ(etass::bockstein_page(5), 31);
    for (int n = 2; n <= 8; ++n) {
        const auto d = etass::bockstein_rule(n);
        EXPECT_EQ(d.page, (1 << n) - 1);
        ASSERT_EQ(d.rules.size(), 1U);
        EXPECT_EQ(d.rules[0].generator, etass::GeneratorSymbol::p());
        EXPECT_EQ(d.rules[0].unit, 1U << (n - 2));
        Monomial target;
        target.set_rho((1U << n) - 1).set_v(n, 1);
        EXPECT_EQ(d.rules[0].image, etass::Polynomial(target));
        EXPECT_TRUE(d.degrees_consistent()) << n;
    }
    EXPECT_TRUE(etass::bockstein_derivation(4).rules.empty());
}

TEST(BocksteinFamilies, CoverTheGrid)
{
    EXPECT_EQ(etass::bockstein_families(window(64)), (std::vector<int>{2, 3, 4, 5, 6}));
    EXPECT_EQ(etass::bockstein_families(window(8)), (std::vector<int>{2, 3}));
}

TEST(BocksteinE1, IsThePolynomialAlgebra)
{
    const auto e1 = etass::build_e1(window(12));
    EXPECT_EQ(e1.dim({0, 5}), 1U);
    EXPECT_EQ(e1.dim({3, 1}), 1U);
    EXPECT_EQ(e1.dim({3, 0}), 0U);
    // (7, 5): rho^4 v3 and P v2.
    EXPECT_EQ(e1.dim({7, 5}), 2U);
    EXPECT_FALSE(e1.has_differential());
}

TEST(Bockstein, TowersOfEachFamily)
{
    const auto res = etass::run_bockstein(window(64));
    for (const auto& tw : res.towers) {
        if (tw.bottom.mw == 0) {
            EXPECT_TRUE(tw.infinite);
            continue;
        }
        const int n = tw.generator.min_v();
        ASSERT_GE(n, 2);
        EXPECT_EQ(tw.length, (1 << n) - 1) << tw.generator.label();
        EXPECT_EQ(tw.generator.rho(), 0U);
    }
}

TEST(Bockstein, MatchesClosedFormAcrossWindows)
{
    for (int mw : {1, 5, 14, 31, 40, 64}) {
        const auto t = window(mw);
        const auto res = etass::run_bockstein(t);
        const auto rep = etass::compare_bockstein_einfty(res.einfty, etass::closed_form_einfty(t));
        EXPECT_TRUE(rep.ok()) << mw << "\n" << rep.summary();
        EXPECT_TRUE(etass::rho_inverted_check(res.einfty).ok()) << mw;
        EXPECT_TRUE(etass::check_bockstein_pages(res).ok()) << mw;
    }
}

// The matching fast path and the dense gf2 route are two independent
// homology computations; they must agree class for class.
TEST(Bockstein, FastAndDenseRoutesAgree)
{
    for (int mw : {9, 20, 33}) {
        const auto t = window(mw);
        const auto fast = etass::run_bockstein(t, {false, false});
        const auto dense = etass::run_bockstein(t, {false, true});
        EXPECT_GT(dense.dense_cells, 0U) << mw;
        for (int m = 0; m <= t.mw_max; ++m)
            for (int c = 0; c <= t.c_max(); ++c) {
                const Bidegree d{m, c};
                ASSERT_EQ(fast.einfty.dim(d), dense.einfty.dim(d)) << etass::to_string(d);
                if (fast.einfty.dim(d))
                    ASSERT_EQ(fast.einfty.cell(d).basis, dense.einfty.cell(d).basis) << etass::to_string(d);
            }
        EXPECT_EQ(fast.towers, dense.towers) << mw;
    }
}

TEST(Bockstein, PagesAreKeptOnRequest)
{
    const auto kept = etass::run_bockstein(window(20), {true, false});
    const auto bare = etass::run_bockstein(window(20), {false, false});
    EXPECT_EQ(kept.pages.size(), 3U); // families 2, 3, 4
    EXPECT_TRUE(bare.pages.empty());
    EXPECT_EQ(kept.pages[0].r(), 3);
    EXPECT_EQ(kept.pages[1].r(), 7);
    EXPECT_EQ(kept.towers, bare.towers);
}
