#include "etass/brackets.hpp"
#include "shared_pipeline.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <functional>
#include <stdexcept>

using etass::BracketExpr;
using etass::GeneratorName;
using etass::testing::pipeline64;

namespace {

// Walks every node, checking stem additivity and that each bracket node is
// one of the two admissible construction steps.
void check_tree(const BracketExpr& e)
{
    if (e.is_leaf()) {
        ASSERT_TRUE(e.kind == BracketExpr::Kind::TwoPower || e.value == (GeneratorName{2, 0}));
        return;
    }
    ASSERT_EQ(e.entries.size(), 3U);
    ASSERT_EQ(e.entries[0].kind, BracketExpr::Kind::TwoPower);
    ASSERT_EQ(e.mw(), e.value.mw());
    ASSERT_EQ(e.entries[1].mw() + e.entries[2].mw() + 1, e.value.mw());
    const auto top = etass::top_triple(e);
    ASSERT_TRUE(top);
    ASSERT_TRUE(etass::derivable_bracket(*top, e.value)) << e.shallow();
    ASSERT_EQ(e.indeterminacy.has_value(), e.step == BracketExpr::Step::LambdaChain);
    for (const auto& sub : e.entries)
        check_tree(sub);
}

} // namespace

TEST(Decompose, WorkedExamples)
{
    const auto leaf = etass::decompose(2, 0);
    EXPECT_TRUE(leaf.is_leaf());
    EXPECT_EQ(leaf.shallow(), "λ2");

    const auto l3 = etass::decompose(3, 0);
    EXPECT_EQ(l3.step, BracketExpr::Step::LambdaChain);
    EXPECT_EQ(l3.shallow(), "⟨2^3, λ2, λ2⟩");
    ASSERT_TRUE(l3.indeterminacy);
    EXPECT_EQ(*l3.indeterminacy, (GeneratorName{3, 0}));

    EXPECT_EQ(etass::decompose(2, 4).shallow(), "⟨2^6, λ5, λ2⟩");
    EXPECT_EQ(etass::decompose(4, 1).shallow(), "⟨2^6, λ5, λ4⟩");
    EXPECT_EQ(etass::decompose(4, 1).shallow_ascii(), "<2^6, lambda5, lambda4>");

    const auto big = etass::decompose(3, 10);
    EXPECT_EQ(big.value, (GeneratorName{3, 40}));
    EXPECT_EQ(big.mw(), 167);
    EXPECT_EQ(big.step, BracketExpr::Step::TopBit);
    EXPECT_EQ(big.shallow(), "⟨2^8, λ7, P^8λ3⟩");
}

TEST(Decompose, EveryGeneratorIsBuiltFromLeaves)
{
    for (int n = 2; n <= 9; ++n)
        for (int k = 0; k <= 40; ++k) {
            const auto e = etass::decompose(n, k);
            ASSERT_EQ(e.value, (GeneratorName{n, static_cast<std::uint32_t>((1 << (n - 1)) * k)}));
            check_tree(e);
            // Fully nested text mentions no generator other than lambda2.
            const auto nested = e.nested();
            ASSERT_EQ(nested.find('P'), std::string::npos) << nested;
            for (int j = 3; j <= 9; ++j)
                ASSERT_EQ(nested.find("λ" + std::to_string(j)), std::string::npos) << nested;
        }
}

TEST(Decompose, RejectsNonGenerators)
{
    EXPECT_THROW(etass::decompose(1, 0), std::invalid_argument);
    EXPECT_THROW(etass::decompose(3, -1), std::invalid_argument);
    EXPECT_THROW(etass::decompose(GeneratorName::unit()), std::invalid_argument);
    EXPECT_THROW(etass::decompose(GeneratorName{3, 2}), std::invalid_argument);
}

TEST(Decompose, JsonTree)
{
    const auto doc = nlohmann::json::parse(etass::decompose(4, 1).json());
    EXPECT_TRUE(doc.is_object());
    EXPECT_NE(doc.dump().find("lambda5"), std::string::npos);
}

TEST(DerivableBracket, AcceptsOnlyAdmissibleTriples)
{
    using etass::BracketTriple;
    // Any split m > n works, not only the top bit.
    EXPECT_TRUE(etass::derivable_bracket(BracketTriple{5, {4, 0}, {2, 2}}, GeneratorName{2, 6}));
    EXPECT_TRUE(etass::derivable_bracket(BracketTriple{4, {3, 0}, {2, 4}}, GeneratorName{2, 6}));
    EXPECT_FALSE(etass::derivable_bracket(BracketTriple{4, {3, 0}, {2, 2}}, GeneratorName{2, 6}));
    EXPECT_FALSE(etass::derivable_bracket(BracketTriple{5, {4, 0}, {4, 0}}, GeneratorName{5, 0}));
    EXPECT_TRUE(etass::derivable_bracket(BracketTriple{3, {2, 0}, {2, 6}}, GeneratorName{5, 0}));
    EXPECT_FALSE(etass::derivable_bracket(BracketTriple{4, {2, 0}, {2, 6}}, GeneratorName{5, 0}));
}

TEST(Brackets, VerifyEveryGeneratorInTheWindow)
{
    const auto& p = pipeline64();
    for (const auto& g : p.groups) {
        if (!g.generator || g.generator->is_unit())
            continue;
        const auto rep = etass::verify_expr(etass::decompose(*g.generator), p.adams.einfty, p.groups);
        EXPECT_TRUE(rep.ok()) << g.mw << "\n" << rep.summary();
    }
}

TEST(Brackets, ReferenceTable)
{
    const auto& rows = etass::reference_rows();
    ASSERT_EQ(rows.size(), 17U);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].mw, 4 * static_cast<int>(i) - 1);
        EXPECT_EQ(rows[i].torsion, etass::imj_order(rows[i].mw));
        EXPECT_EQ(rows[i].generator.mw(), rows[i].mw);
        if (rows[i].bracket)
            EXPECT_TRUE(etass::derivable_bracket(*rows[i].bracket, rows[i].generator)) << rows[i].mw;
    }
    const auto& p = pipeline64();
    const auto rep = etass::generator_table_report(p.adams.einfty, p.groups);
    EXPECT_TRUE(rep.ok()) << rep.summary();
}

TEST(Brackets, FiltrationObstruction)
{
    const auto rep = etass::filtration_obstruction_check(pipeline64().adams.einfty);
    EXPECT_TRUE(rep.ok()) << rep.summary();
    const auto e = rep.filter("brackets.filtration");
    ASSERT_FALSE(e.empty());
    EXPECT_NE(e.back().detail.find("27"), std::string::npos);
    EXPECT_NE(e.back().detail.find("26"), std::string::npos);
}

TEST(Brackets, Lines)
{
    const auto& groups = pipeline64().groups;
    EXPECT_EQ(etass::bracket_line(groups[47]).rfind("mw=47 P^8λ4 = ⟨2^6, λ5, λ4⟩", 0), 0U);
    const auto all = etass::bracket_lines(groups);
    EXPECT_NE(all.find("mw=3 λ2"), std::string::npos);
    EXPECT_NE(all.find("mw=63 λ6 = ⟨2^3, λ2, P^14λ2⟩"), std::string::npos);
}
