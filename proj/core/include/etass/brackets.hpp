#pragma once

// Iterated 3-fold Toda brackets over {2^t, lambda2} that produce every
// generator P^e lambda_n, and their consistency checks.

#include "etass/homotopy.hpp"
#include "etass/page.hpp"
#include "etass/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etass {

struct BracketExpr
{
    enum class Kind { TwoPower, Lambda2, Bracket };
    /// How a Bracket node was formed.
    ///   LambdaChain: lambda_n = <2^3, lambda2, P^(2^(n-2) - 2) lambda2>, n >= 3
    ///   TopBit:      P^(2^(m-2) + e) lambda_n = <2^(m+1), lambda_m, P^e lambda_n>, m > n
    enum class Step { Leaf, LambdaChain, TopBit };

    Kind kind = Kind::Lambda2;
    Step step = Step::Leaf;
    int two_exp = 0;          ///< TwoPower only
    GeneratorName value;      ///< generator the node produces; unit for TwoPower
    std::vector<BracketExpr> entries; ///< three for Bracket
    /// Set on LambdaChain nodes: the bracket is defined up to 2^3 times this generator.
    std::optional<GeneratorName> indeterminacy;

    static BracketExpr two_power(int t);
    static BracketExpr lambda2();

    /// 0 for 2^t, 3 for lambda2, sum of entries + 1 for a bracket.
    int mw() const;
    bool is_leaf() const { return kind != Kind::Bracket; }

    /// "2^3", "λ2", or the top-level bracket "⟨2^6, λ5, λ4⟩".
    std::string shallow() const;
    /// Fully expanded to leaves.
    std::string nested() const;
    /// As shallow(), ASCII: "<2^6, lambda5, lambda4>".
    std::string shallow_ascii() const;
    std::string json() const;
};

/// The canonical decomposition of P^(2^(n-1) k) lambda_n.
BracketExpr decompose(int n, int k);
BracketExpr decompose(const GeneratorName& g);

/// mw additivity, order admissibility of the first entry, the detecting
/// E-infinity class, and the indeterminacy bookkeeping, at every bracket node.
Report verify_expr(const BracketExpr& e, const Page& einfty, const std::vector<HomotopyGroup>& groups);

/// A bracket <2^t, middle, right> claimed to produce `target`.
struct BracketTriple
{
    int two_exp = 0;
    GeneratorName middle;
    GeneratorName right;

    friend bool operator==(const BracketTriple&, const BracketTriple&) = default;
};
/// True when the triple is an instance of the lambda chain or of the top-bit step (any split, not only the top bit).
bool derivable_bracket(const BracketTriple& b, const GeneratorName& target);
std::optional<BracketTriple> top_triple(const BracketExpr& e);
std::string triple_text(const BracketTriple& b);

struct ReferenceRow
{
    int mw = 0;
    const char* detector = "";
    GeneratorName generator;
    int torsion = 0; ///< 0 for the infinite group
    std::optional<BracketTriple> bracket;
    std::optional<GeneratorName> indeterminacy; ///< 2^3 times this
};
/// The reference generator table, stems 0 to 63.
const std::vector<ReferenceRow>& reference_rows();

/// Compares generator, detector, torsion, bracket and indeterminacy of every
/// reference row with the computed groups and the canonical decomposition.
Report generator_table_report(const Page& einfty, const std::vector<HomotopyGroup>& groups);

/// <2^5, lambda4, lambda4> has stem 31, but its Chow degree 5 + 2 * 11 = 27
/// exceeds the Chow degree 26 of the class detecting lambda5.
Report filtration_obstruction_check(const Page& einfty);

/// "mw=47 P^8λ4 = ⟨2^6, λ5, λ4⟩" per nonzero stem.
std::string bracket_lines(const std::vector<HomotopyGroup>& groups);
std::string bracket_line(const HomotopyGroup& g);

} // namespace etass
