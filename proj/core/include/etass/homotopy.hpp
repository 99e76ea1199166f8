#pragma once

// Milnor-Witt stems of the eta-inverted R-motivic sphere, read off the Adams
// E-infinity page: a rho-tower of length t detects a cyclic group of order 2^t.

#include "etass/page.hpp"
#include "etass/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etass {

/// P^p_exp lambda_n, or the unit when n == 0.
struct GeneratorName
{
    int n = 0;
    std::uint32_t p_exp = 0;

    static GeneratorName unit() { return {}; }
    bool is_unit() const { return n == 0; }
    int mw() const { return is_unit() ? 0 : (1 << n) - 1 + 4 * static_cast<int>(p_exp); }
    /// "P^8lambda4", "lambda2", "1".
    std::string label() const;
    /// "P^8λ4", "λ2", "1".
    std::string pretty() const;
    /// The E-infinity class detecting it: rho^(2^n - n - 2) P^p_exp v_n.
    Monomial detector() const;

    friend bool operator==(const GeneratorName&, const GeneratorName&) = default;
};

struct HomotopyGroup
{
    int mw = 0;
    /// t for Z/2^t; 0 for the zero group. Unused when infinite.
    int order_exponent = 0;
    bool infinite = false;
    std::optional<GeneratorName> generator;
    Monomial detector;
    Bidegree detector_bidegree;

    bool is_zero() const { return !infinite && order_exponent == 0; }
    /// "0", "Z/2^3", "Z_2[eta^{+-1}]".
    std::string group_text() const;
};

/// One group per stem 0..mw_max. Throws MultipleTowers when a stem carries
/// more than one tower, PageInconsistency when a tower generator is not of
/// the form rho^(2^n - n - 2) P^(2^(n-1) k) v_n.
std::vector<HomotopyGroup> extract_groups(const Page& einfty, int mw_max);

/// v2(mw + 1) + 1 for mw = 3 (mod 4); throws WrongStem otherwise.
int imj_order(int mw);

/// Compares extract_groups with imj_order at every mw = 3 (mod 4), zero at
/// other positive stems, and the infinite group at mw = 0.
Report group_order_check(const std::vector<HomotopyGroup>& groups);

struct ProductEntry
{
    GeneratorName a;
    GeneratorName b;
    int target_mw = 0;
    /// The target stem is zero (or out of the window and = 2 mod 4).
    bool zero = true;
};
/// Products of every pair of nonunit generators.
std::vector<ProductEntry> zero_product_table(const std::vector<HomotopyGroup>& groups);
/// Every product of two generators lands in a stem = 2 (mod 4) where the group vanishes.
Report ring_structure_report(const std::vector<HomotopyGroup>& groups);

/// Aligned text: mw, E-infinity detector, generator, torsion. Zero stems omitted.
std::string groups_table_text(const std::vector<HomotopyGroup>& groups);
/// One line per nonzero stem: "mw=63 Z/2^7 gen=lambda6".
std::string groups_lines(const std::vector<HomotopyGroup>& groups);
std::string groups_json(const std::vector<HomotopyGroup>& groups);

} // namespace etass
