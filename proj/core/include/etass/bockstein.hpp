#pragma once

// The rho-Bockstein spectral sequence F2[rho, P, v2, v3, ...] => Ext over R
// with h1 inverted.

#include "etass/algebra.hpp"
#include "etass/page.hpp"
#include "etass/report.hpp"

#include <vector>

namespace etass {

/// Index 2^n - 1 of the page carrying the family-n differential.
constexpr int bockstein_page(int n) { return (1 << n) - 1; }

/// Families n processed for a truncation: every n >= 2 whose v_n lies in the
/// stored grid or one column beyond it.
std::vector<int> bockstein_families(const Truncation& t);

/// E1-page: every monomial over {rho, P, v_n}, no relations, zero differential.
Page build_e1(const Truncation& t);

/// d_{2^n - 1}: P^(2^(n-2)) -> rho^(2^n - 1) v_n, every other generator a cycle.
Derivation bockstein_rule(int n);

/// The derivation on page r: bockstein_rule(n) when r = 2^n - 1, otherwise
/// the zero derivation (every generator a cycle).
Derivation bockstein_derivation(int r);

struct BocksteinOptions
{
    /// Keep every intermediate page (needed for page dumps and page checks).
    bool keep_pages = true;
    /// Use gf2 kernels and quotients in every cell instead of the matching fast path.
    bool dense_homology = false;
};

struct BocksteinResult
{
    /// E_{2^n - 1} for each processed family, carrying d_{2^n - 1}.
    std::vector<Page> pages;
    Page einfty;
    std::vector<TorsionTower> towers;
    /// Cells where the differential was not a partial matching and the gf2 route ran.
    std::size_t dense_cells = 0;
};

BocksteinResult run_bockstein(const Truncation& t, const BocksteinOptions& opts = {});

/// Basis {rho^b} together with
/// {rho^b P^(2^(n-1) k) v_n v_m1 ... v_ma : n <= m1 <= ... <= ma, b <= 2^n - 2},
/// enumerated directly, with its rho action.
Page closed_form_einfty(const Truncation& t);

/// Bidegree-by-bidegree comparison of two E-infinity pages over the reported
/// window, including the tower lists and the v_n-family length 2^n - 1.
Report compare_bockstein_einfty(const Page& computed, const Page& closed);

/// Only stem 0 carries towers that reach the truncation boundary.
Report rho_inverted_check(const Page& einfty);

/// d o d = 0 and rank-nullity across each kept page transition, plus the
/// identity behaviour of the skipped pages.
Report check_bockstein_pages(const BocksteinResult& result);

} // namespace etass
