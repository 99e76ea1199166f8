#include "etass/page.hpp"

#include "etass/errors.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace etass {

std::string to_string(PageKind k) { return k == PageKind::Bockstein ? "bockstein" : "adams"; }

Page::Page(PageKind kind, int r, Truncation trunc)
    : kind_(kind), r_(r), trunc_(trunc),
      cells_(static_cast<std::size_t>(trunc.grid_mw() + 1) * static_cast<std::size_t>(trunc.c_max() + 1))
{
}

std::string Page::label() const
{
    const std::string prefix = kind_ == PageKind::Bockstein ? "Bockstein" : "Adams";
    return r_ == kInfinity ? prefix + "-E_inf" : fmt::format("{}-E_{}", prefix, r_);
}

Bidegree Page::diff_shift() const
{
    if (kind_ == PageKind::Bockstein)
        return {-1, 0};
    return {-1, r_ == kInfinity ? 0 : r_ - 1};
}

Cell& Page::cell(Bidegree d)
{
    if (!in_grid(d))
        throw std::out_of_range(fmt::format("{} outside the page grid", to_string(d)));
    return cells_[slot(d)];
}

const Cell& Page::cell(Bidegree d) const
{
    if (!in_grid(d))
        throw std::out_of_range(fmt::format("{} outside the page grid", to_string(d)));
    return cells_[slot(d)];
}

std::size_t Page::dim(Bidegree d) const { return in_grid(d) ? cells_[slot(d)].size() : 0; }

std::optional<std::uint32_t> Page::index_of(Bidegree d, const Monomial& m) const
{
    if (!in_grid(d))
        return std::nullopt;
    const auto& b = cells_[slot(d)].basis;
    auto it = std::lower_bound(b.begin(), b.end(), m);
    if (it == b.end() || *it != m)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - b.begin());
}

gf2::F2Matrix Page::diff_matrix(Bidegree d) const
{
    const auto& src = cell(d);
    const Bidegree t = d + diff_shift();
    gf2::F2Matrix m(dim(t), src.size());
    if (!src.diff.empty())
        for (std::size_t j = 0; j < src.size(); ++j)
            for (auto i : src.diff[j])
                m.set(i, j);
    return m;
}

gf2::F2Matrix Page::rho_matrix(Bidegree d) const
{
    const auto& src = cell(d);
    gf2::F2Matrix m(dim(d + Bidegree{0, 1}), src.size());
    if (!src.rho.empty())
        for (std::size_t j = 0; j < src.size(); ++j)
            for (auto i : src.rho[j])
                m.set(i, j);
    return m;
}

gf2::F2Vector Page::diff_vector(Bidegree d, std::uint32_t i) const
{
    const auto& src = cell(d);
    gf2::F2Vector v(dim(d + diff_shift()));
    if (!src.diff.empty())
        for (auto k : src.diff.at(i))
            v.set(k);
    return v;
}

std::size_t Page::total_dim() const
{
    std::size_t n = 0;
    for (const auto& c : cells_)
        n += c.size();
    return n;
}

std::size_t Page::reported_dim() const
{
    std::size_t n = 0;
    for_each_cell([&](Bidegree, const Cell& c) { n += c.size(); }, trunc_.mw_max);
    return n;
}

void Page::for_each_cell(const std::function<void(Bidegree, const Cell&)>& f, int limit_mw) const
{
    const int top = limit_mw < 0 ? trunc_.grid_mw() : std::min(limit_mw, trunc_.grid_mw());
    for (int mw = 0; mw <= top; ++mw)
        for (int c = 0; c <= trunc_.c_max(); ++c) {
            const auto& cl = cells_[slot({mw, c})];
            if (cl.size())
                f({mw, c}, cl);
        }
}

void Page::set_monomial_rho_action()
{
    const Monomial rho = Monomial::of(GeneratorSymbol::rho());
    for (int mw = 0; mw <= trunc_.grid_mw(); ++mw)
        for (int c = 0; c < trunc_.c_max(); ++c) {
            auto& cl = cells_[slot({mw, c})];
            cl.rho.assign(cl.size(), {});
            for (std::size_t i = 0; i < cl.size(); ++i)
                if (auto j = index_of({mw, c + 1}, cl.basis[i] * rho))
                    cl.rho[i].push_back(*j);
        }
}

std::string TorsionTower::length_text() const
{
    if (infinite)
        return "inf";
    if (reaches_boundary)
        return fmt::format(">= {}", length);
    return std::to_string(length);
}

std::vector<TorsionTower> compute_towers(const Page& page)
{
    const auto& t = page.truncation();
    std::vector<TorsionTower> out;
    for (int mw = 0; mw <= t.mw_max; ++mw) {
        // hit[c][i]: class i at (mw, c) is rho times a class below.
        std::vector<std::vector<char>> hit(static_cast<std::size_t>(t.c_max() + 2));
        for (int c = 0; c <= t.c_max(); ++c)
            hit[static_cast<std::size_t>(c)].assign(page.dim({mw, c}), 0);
        for (int c = 0; c < t.c_max(); ++c) {
            const auto& cl = page.cell({mw, c});
            if (cl.size() && cl.rho.size() != cl.size())
                throw PageInconsistency(fmt::format("{}: rho action missing at {}", page.label(),
                                                    to_string(Bidegree{mw, c})));
            for (std::size_t i = 0; i < cl.size(); ++i) {
                if (cl.rho[i].size() > 1)
                    throw PageInconsistency(fmt::format("{}: rho * {} is not a single class", page.label(),
                                                        cl.basis[i].label()));
                for (auto j : cl.rho[i]) {
                    auto& h = hit[static_cast<std::size_t>(c + 1)][j];
                    if (h)
                        throw PageInconsistency(fmt::format("{}: rho action not injective into {}",
                                                            page.label(), to_string(Bidegree{mw, c + 1})));
                    h = 1;
                }
            }
        }
        for (int c = 0; c <= t.c_max(); ++c) {
            const auto& cl = page.cell({mw, c});
            for (std::size_t i = 0; i < cl.size(); ++i) {
                if (hit[static_cast<std::size_t>(c)][i])
                    continue;
                TorsionTower tw;
                tw.generator = cl.basis[i];
                tw.bottom = {mw, c};
                int cc = c;
                std::uint32_t idx = static_cast<std::uint32_t>(i);
                tw.length = 1;
                while (cc < t.c_max()) {
                    const auto& here = page.cell({mw, cc});
                    if (here.rho[idx].empty())
                        break;
                    idx = here.rho[idx].front();
                    ++cc;
                    ++tw.length;
                }
                tw.reaches_boundary = cc == t.c_max();
                tw.infinite = tw.reaches_boundary && mw == 0;
                out.push_back(tw);
            }
        }
    }
    return out;
}

} // namespace etass
