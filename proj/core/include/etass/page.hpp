#pragma once

// One page of a spectral sequence on the (mw, c) grid.

#include "etass/algebra.hpp"
#include "etass/gf2.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace etass {

enum class PageKind { Bockstein, Adams };

std::string to_string(PageKind k);

/// Sparse F2 vector: sorted indices of nonzero coordinates.
using SparseVec = std::vector<std::uint32_t>;

struct Cell
{
    /// Classes in canonical order, each represented by a single monomial.
    std::vector<Monomial> basis;
    /// diff[i]: d_r of class i in the basis of cell (mw, c) + diff_shift().
    /// Empty outer vector means d_r vanishes on this cell.
    std::vector<SparseVec> diff;
    /// rho[i]: rho times class i in the basis of cell (mw, c + 1).
    /// Empty outer vector means the action was not recorded.
    std::vector<SparseVec> rho;

    std::size_t size() const { return basis.size(); }
};

class Page
{
public:
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    Page() = default;
    Page(PageKind kind, int r, Truncation trunc);

    PageKind kind() const { return kind_; }
    /// Page index; kInfinity for E-infinity.
    int r() const { return r_; }
    std::string label() const;
    const Truncation& truncation() const { return trunc_; }

    /// Degree of the differential stored on this page.
    Bidegree diff_shift() const;
    bool has_differential() const { return has_diff_; }
    void set_has_differential(bool v) { has_diff_ = v; }

    bool in_grid(Bidegree d) const
    {
        return d.mw >= 0 && d.mw <= trunc_.grid_mw() && d.c >= 0 && d.c <= trunc_.c_max();
    }
    Cell& cell(Bidegree d);
    const Cell& cell(Bidegree d) const;
    /// Dimension at d; zero outside the grid.
    std::size_t dim(Bidegree d) const;
    std::optional<std::uint32_t> index_of(Bidegree d, const Monomial& m) const;
    std::optional<std::uint32_t> index_of(const Monomial& m) const { return index_of(m.bidegree(), m); }

    /// Matrix of d_r out of d: column j is d_r(class j).
    gf2::F2Matrix diff_matrix(Bidegree d) const;
    /// Matrix of multiplication by rho out of d: column j is rho * (class j).
    gf2::F2Matrix rho_matrix(Bidegree d) const;
    gf2::F2Vector diff_vector(Bidegree d, std::uint32_t i) const;

    std::size_t total_dim() const;
    /// Total dimension over the reported window.
    std::size_t reported_dim() const;
    /// Calls f(bidegree, cell) for every nonempty cell with mw <= limit_mw.
    void for_each_cell(const std::function<void(Bidegree, const Cell&)>& f, int limit_mw = -1) const;

    /// Fills every cell's rho action by looking up rho * m among the classes of
    /// the cell above; a missing product is zero.
    void set_monomial_rho_action();

private:
    std::size_t slot(Bidegree d) const
    {
        return static_cast<std::size_t>(d.mw) * static_cast<std::size_t>(trunc_.c_max() + 1) +
               static_cast<std::size_t>(d.c);
    }

    PageKind kind_ = PageKind::Bockstein;
    int r_ = 1;
    Truncation trunc_;
    bool has_diff_ = false;
    std::vector<Cell> cells_;
};

struct TorsionTower
{
    Monomial generator;
    Bidegree bottom;
    /// Number of nonzero rho-multiples including the generator.
    int length = 0;
    /// The last class sits on the top Chow row, so the true length may be larger.
    bool reaches_boundary = false;
    /// Reaches the boundary in stem 0, the only place an unbounded tower is accepted.
    bool infinite = false;

    /// "3", ">= 12" or "inf".
    std::string length_text() const;
    friend bool operator==(const TorsionTower&, const TorsionTower&) = default;
};

/// Rho-towers over the reported window, ordered by (mw, c). Requires the rho
/// action to send each class to a single class or zero, injectively.
/// Throws PageInconsistency otherwise.
std::vector<TorsionTower> compute_towers(const Page& page);

} // namespace etass
