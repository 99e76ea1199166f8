#include "etass/adams.hpp"
#include "etass/algebra.hpp"
#include "etass/bockstein.hpp"
#include "etass/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using etass::Bidegree;
using etass::GeneratorSymbol;
using etass::Monomial;
using etass::Polynomial;
using etass::Relations;

namespace {

Monomial random_monomial(std::mt19937_64& rng, int max_v = 7)
{
    Monomial m;
    m.set_rho(static_cast<std::uint32_t>(rng() % 12)).set_p(static_cast<std::uint32_t>(rng() % 9));
    for (int n = 2; n <= max_v; ++n)
        if (rng() % 3 == 0)
            m.set_v(n, static_cast<std::uint32_t>(1 + rng() % 3));
    return m;
}

Monomial mono(std::string_view label) { return Monomial::parse(label); }

} // namespace

TEST(Generators, Degrees)
{
    EXPECT_EQ(GeneratorSymbol::rho().degree(), (Bidegree{0, 1}));
    EXPECT_EQ(GeneratorSymbol::p().degree(), (Bidegree{4, 4}));
    for (int n = 2; n <= etass::kMaxVIndex; ++n)
        EXPECT_EQ(GeneratorSymbol::v(n).degree(), (Bidegree{(1 << n) - 1, 1})) << n;
}

TEST(Monomial, LabelsAndParsing)
{
    EXPECT_EQ(Monomial::one().label(), "1");
    EXPECT_EQ(Monomial::parse("1"), Monomial::one());
    const Monomial m = mono("rho^3P^4v3");
    EXPECT_EQ(m.rho(), 3U);
    EXPECT_EQ(m.p(), 4U);
    EXPECT_EQ(m.v(3), 1U);
    EXPECT_EQ(m.bidegree(), (Bidegree{23, 20}));
    EXPECT_EQ(m.pretty(), "ρ³P⁴v₃");
    EXPECT_EQ(mono("v2v5").bidegree(), (Bidegree{34, 2}));
    EXPECT_EQ(mono("P^6v2^2").label(), "P^6v2^2");
}

TEST(Monomial, ParseRoundTripsRandomLabels)
{
    std::mt19937_64 rng(10);
    for (int i = 0; i < 2000; ++i) {
        const Monomial m = random_monomial(rng);
        ASSERT_EQ(Monomial::parse(m.label()), m) << m.label();
    }
}

TEST(Monomial, BidegreeIsAdditive)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Monomial a = random_monomial(rng);
        const Monomial b = random_monomial(rng);
        ASSERT_EQ((a * b).bidegree(), a.bidegree() + b.bidegree());
        ASSERT_EQ((a * b).total_degree(), a.total_degree() + b.total_degree());
        ASSERT_TRUE((a * b).divisible_by(a));
        ASSERT_EQ((a * b) / a, b);
    }
}

TEST(Monomial, OrderIsATotalGradedOrder)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 2000; ++i) {
        const Monomial a = random_monomial(rng);
        const Monomial b = random_monomial(rng);
        const Monomial c = random_monomial(rng);
        ASSERT_EQ(a <=> b == 0, a == b);
        ASSERT_EQ(a < b, b > a);
        if (a < b && b < c)
            ASSERT_LT(a, c);
        if (a.total_degree() < b.total_degree())
            ASSERT_LT(a, b);
        // Multiplication respects the order.
        if (a < b)
            ASSERT_LT(a * c, b * c);
    }
}

TEST(Normalize, RhoTorsionAndPDivisibility)
{
    EXPECT_FALSE(etass::normalize(mono("rho^3v2")));
    EXPECT_TRUE(etass::normalize(mono("rho^2v2")));
    EXPECT_TRUE(etass::normalize(mono("rho^6v3v2")) == std::nullopt);
    EXPECT_TRUE(etass::normalize(mono("rho^6v3")));
    EXPECT_TRUE(etass::normalize(mono("P^2v2")));
    EXPECT_THROW(etass::normalize(mono("Pv2")), etass::NormalizationFailure);
    EXPECT_THROW(etass::normalize(mono("P^2v3")), etass::NormalizationFailure);
    EXPECT_TRUE(etass::normalize(mono("P^4v3")));
    EXPECT_THROW(etass::normalize(mono("P")), etass::NormalizationFailure);
    EXPECT_FALSE(etass::is_normal(mono("Pv2")));
    EXPECT_TRUE(etass::normalize(mono("rho^40")));
    EXPECT_TRUE(etass::normalize(mono("rho^3v2"), Relations::ext_without_torsion()));
}

TEST(Normalize, BocksteinLevels)
{
    // Before any family has run, nothing is killed and every P-power is allowed.
    EXPECT_TRUE(etass::normalize(mono("rho^9Pv2"), Relations::free()));
    EXPECT_TRUE(etass::normalize(mono("P^3"), Relations::free()));
    // After family 2: rho^3 v2 = 0, P-exponents on v2 even, v3 untouched by torsion.
    EXPECT_FALSE(etass::normalize(mono("rho^3v2"), Relations::bockstein(2)));
    EXPECT_TRUE(etass::normalize(mono("rho^3v3"), Relations::bockstein(2)));
    EXPECT_TRUE(etass::normalize(mono("P^2v3"), Relations::bockstein(2)));
    EXPECT_THROW(etass::normalize(mono("P^3"), Relations::bockstein(2)), etass::NormalizationFailure);
    EXPECT_EQ(Relations::bockstein(3).p_divisor(0), 4U);
    EXPECT_EQ(Relations::ext().p_divisor(4), 8U);
}

TEST(Normalize, Products)
{
    auto nm = [](std::string_view s) { return *etass::normalize(mono(s)); };
    EXPECT_EQ(etass::multiply(nm("v2"), nm("P^2v2"))->monomial(), mono("P^2v2^2"));
    EXPECT_EQ(etass::multiply(nm("P^2v2"), nm("P^4v2"))->monomial(), mono("P^6v2^2"));
    EXPECT_FALSE(etass::multiply(nm("rho"), nm("rho^2v2")));
    EXPECT_EQ(etass::multiply(nm("rho^3P^4v3"), nm("rho^3P^8v3"))->monomial(), mono("rho^6P^12v3^2"));
}

TEST(Polynomial, ToggleCancelsAndSorts)
{
    Polynomial p;
    p.toggle(mono("v3"));
    p.toggle(mono("rho^4v2"));
    p.toggle(mono("v3"));
    EXPECT_EQ(p.size(), 1U);
    EXPECT_EQ(p.label(), "rho^4v2");
    Polynomial q{mono("rho^4v2"), mono("rho^2P^2")};
    p += q;
    EXPECT_EQ(p.label(), "rho^2P^2");
    EXPECT_TRUE((p + p).is_zero());
    EXPECT_EQ(Polynomial().label(), "0");
    EXPECT_TRUE(std::is_sorted(q.terms().begin(), q.terms().end()));
}

TEST(Enumerate, MatchesBruteForce)
{
    const std::vector<GeneratorSymbol> gens{GeneratorSymbol::rho(), GeneratorSymbol::p(), GeneratorSymbol::v(2),
                                            GeneratorSymbol::v(3), GeneratorSymbol::v(4)};
    for (int mw = 0; mw <= 24; ++mw)
        for (int c = 0; c <= 20; ++c) {
            const auto got = etass::enumerate_monomials({mw, c}, gens);
            std::set<Monomial> want;
            for (int e = 0; 4 * e <= mw; ++e)
                for (int a2 = 0; 4 * e + 3 * a2 <= mw; ++a2)
                    for (int a3 = 0; 4 * e + 3 * a2 + 7 * a3 <= mw; ++a3) {
                        const int rest = mw - 4 * e - 3 * a2 - 7 * a3;
                        if (rest % 15 != 0)
                            continue;
                        const int a4 = rest / 15;
                        const int b = c - 4 * e - a2 - a3 - a4;
                        if (b < 0)
                            continue;
                        Monomial m;
                        m.set_rho(b).set_p(e).set_v(2, a2).set_v(3, a3).set_v(4, a4);
                        want.insert(m);
                    }
            ASSERT_EQ(got.size(), want.size()) << mw << "," << c;
            ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
            for (const auto& m : got)
                ASSERT_TRUE(want.count(m));
        }
}

TEST(Derivation, LeibnizOnTheD2Model)
{
    const auto d2 = etass::d2_rule();
    EXPECT_TRUE(d2.degrees_consistent());
    EXPECT_EQ(etass::leibniz_apply(d2, mono("v3")).label(), "v2^2");
    EXPECT_TRUE(etass::leibniz_apply(d2, mono("v3^2")).is_zero());
    EXPECT_TRUE(etass::leibniz_apply(d2, mono("rho^5P^4v2")).is_zero());
    // d(v3 v4) = v2^2 v4 + v3^3
    EXPECT_EQ(etass::leibniz_apply(d2, mono("v3v4")), (Polynomial{mono("v2^2v4"), mono("v3^3")}));
}

TEST(Derivation, MissingRuleThrows)
{
    etass::Derivation d;
    d.shift = {-1, 2};
    d.cycles = {GeneratorSymbol::rho()};
    EXPECT_NO_THROW(etass::leibniz_apply(d, mono("rho^4")));
    EXPECT_THROW(etass::leibniz_apply(d, mono("rho^4v2")), etass::MissingRule);
}

TEST(Truncation, Defaults)
{
    etass::Truncation t;
    EXPECT_EQ(t.mw_max, 64);
    EXPECT_EQ(t.c_max(), 136);
    EXPECT_EQ(t.internal_mw(), 65);
    EXPECT_EQ(t.max_v_index(), 6);
    EXPECT_EQ(t.generators().size(), 2U + 5U);
    EXPECT_TRUE(t.reported({64, 136}));
    EXPECT_FALSE(t.reported({65, 0}));
}
