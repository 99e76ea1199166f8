#pragma once

// Ext over R with h1 inverted as a multiplicative model, and structural
// scans over its basis.

#include "etass/algebra.hpp"
#include "etass/page.hpp"
#include "etass/report.hpp"

#include <cstdint>

namespace etass {

/// A basis element of Ext: a monomial in P-shift normal form.
using ExtBasisElement = NormalMonomial;

/// Every element P^(2^(n-1) k) v_n or P^(2^(n-1) k) v_n^2 in the reported
/// window shares its bidegree with no rho-divisible basis element. Also
/// reports the collision P^2 v2 v5 / rho^4 v3^6, which lies outside the claim.
Report unique_detection_scan(const Page& bockstein_einfty);
Report unique_detection_scan(int mw_max);

/// dim = 0 at every (2i, 2i), i >= 1, 2i <= mw_max.
Report vanishing_scan(const Page& einfty);

/// Index, degree and annihilation arithmetic of the two bracket families
///   <rho^(2^m - 2^n) v_m, rho^(2^n - 1), P^(2^(n-1) k) v_n>   (k >= 1)
///   <P^(2^(n-1) k) v_n, rho^(2^m - 2) v_m, rho>              (k >= 0)
/// each claimed to equal P^(2^(n-1) k + 2^(m-2)) v_n. The value is derived
/// independently from the Bockstein null-homotopy P^(2^(m-2)) of rho^(2^m - 1) v_m.
/// k = 0 is still checked for the first family but flagged as outside its range.
Report massey_index_check(int n, int k, int m);
/// massey_index_check over every (n, k, m) with target stem <= mw_max.
Report massey_index_sweep(int mw_max);

/// Associativity, commutativity and the P-shift identity on `trials` random
/// triples of basis elements in the window, plus closure in the basis.
Report product_consistency(int mw_max, int trials, std::uint64_t seed = 0x5eed);

} // namespace etass
