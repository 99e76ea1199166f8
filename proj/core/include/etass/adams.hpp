#pragma once

// The h1-inverted Adams spectral sequence over R, starting from the
// Bockstein E-infinity page as E2.

#include "etass/algebra.hpp"
#include "etass/gf2.hpp"
#include "etass/page.hpp"
#include "etass/report.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace etass {

/// d2 on the E2 model: v_n -> v_(n-1)^2 for n >= 3; rho, P, v2 are cycles.
Derivation d2_rule();

struct AdamsDiffRule
{
    int r = 0;
    int n = 0; ///< source family
    int k = 0; ///< source periodicity multiple
    Monomial source;
    Monomial target;

    /// Source multiplied by rho^a carries target times rho^a; zero once
    /// a reaches the target family's torsion 2^(n - r + 1) - 1.
    std::uint32_t target_torsion() const { return (std::uint32_t{1} << (n - r + 1)) - 1; }
};

/// rho^(2^n - 2^(n-r+2) - r + 2) P^(2^(n-1) k) v_n
///   -> P^(2^(n-1) k + 2^(n-2) - 2^(n-r)) v_(n-r+1)^2
/// for every n >= r + 1, k >= 0 with source stem <= t.internal_mw().
std::vector<AdamsDiffRule> dr_rule(int r, const Truncation& t);

/// max{ n - 1 : 2^n - 1 <= internal_mw }: the last page with a rule in the window.
int adams_r_max(const Truncation& t);

/// Per-cell data of one Adams page as a subquotient of the E2 cell: the
/// classes are the E2 monomials at `reps`, taken modulo `boundaries`.
class PageCoordinates
{
public:
    PageCoordinates() = default;
    PageCoordinates(std::size_t ambient, const gf2::F2Span& boundaries, std::vector<std::uint32_t> reps);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<std::uint32_t>& reps() const { return reps_; }

    /// Coordinates of an ambient vector in the page basis; nullopt when the
    /// vector is not a cycle of this page (not in span(reps) + boundaries).
    std::optional<gf2::F2Vector> project(const gf2::F2Vector& ambient_vec) const;

private:
    std::size_t ambient_ = 0;
    std::vector<std::uint32_t> reps_;
    gf2::F2Span echelon_; // [ambient | tag] rows
};

struct AdamsOptions
{
    /// Keep every page with its differential (page dumps, charts, page checks).
    bool keep_pages = true;
};

struct AdamsResult
{
    /// E_r carrying d_r for r = 2, 3, ..., r_max.
    std::vector<Page> pages;
    Page einfty;
    std::vector<TorsionTower> towers;
    Page e2;
    Page e3; ///< always kept, carrying d3 when there is one
    /// E3 coordinates for every cell of the exact window, for product checks.
    std::vector<PageCoordinates> e3_coords;

    /// Class of an E2-model polynomial on E3 (nullopt when it is not a cycle).
    std::optional<gf2::F2Vector> project_e3(Bidegree d, const Polynomial& p) const;
};

/// Runs d2, d3, ..., d_rmax. `e2` must be the Bockstein E-infinity page.
AdamsResult run_adams(const Page& e2, const AdamsOptions& opts = {});

/// Homology of d2 alone.
Page compute_e3(const Page& e2);

struct ExpectedTower
{
    Monomial generator;
    Bidegree bottom;
    int length = 0;
    bool infinite = false;
};

/// Generators of the E3-page as a rho-module, in the reported window.
std::vector<ExpectedTower> closed_form_e3(const Truncation& t);
/// Generators of the E-infinity-page as a rho-module, in the reported window.
std::vector<ExpectedTower> closed_form_adams_einfty(const Truncation& t);

/// Tower-by-tower comparison of a computed page with a closed form.
Report compare_towers(const std::string& check, const Page& page, const std::vector<ExpectedTower>& expected);

/// Products of E3 generators computed in E2 and projected to E3.
Report check_e3_products(const AdamsResult& result);

/// d o d = 0, the (-1, r-1) degree of every rule and every stored differential.
Report check_adams_pages(const AdamsResult& result);

/// No E-infinity class in stems mw = 1, 2 (mod 4), mw > 0.
Report mod4_vanishing_scan(const Page& einfty);

/// Every E3 class in a stem mw = 2 (mod 4) is the target of exactly one rule instance.
Report exhaustiveness_scan(const AdamsResult& result);

/// For each E_r, r >= 3, lists rho-tower generators that carry no rule but
/// have a nonzero class in their d_r target bidegree.
Report alternative_target_scan(const AdamsResult& result);

/// Every stem 0 < mw <= mw_max of E-infinity has finitely many classes, all with c <= mw.
Report ext_finiteness_scan(const Page& einfty);

/// Homology of F2[w1, ..., wN], |w_n| = 2^n - 1, with d w_n = w_(n-1)^2 and
/// d w1 = 0, by brute-force linear algebra in every degree below the bound.
struct DgaHomology
{
    int num_gens = 0;
    int degree_bound = 0;
    /// Largest degree where the truncation does not affect homology.
    int faithful_degree = 0;
    std::vector<std::size_t> dims; ///< dims[d] for 0 <= d <= faithful_degree
};
DgaHomology dga_homology(int num_gens, int degree_bound);
/// Compares dga_homology with F2[w1]/(w1^2): dimension 1 in degrees 0 and 1, else 0.
Report dga_homology_oracle(int num_gens, int degree_bound);

/// Recomputes d2-homology at `samples` random bidegrees with an independent
/// enumerator and Leibniz rule, and compares with the E3-page.
Report e2_oracle_check(const Page& e3, int samples, std::uint64_t seed);

} // namespace etass
