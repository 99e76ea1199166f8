#include "etass/bockstein.hpp"

#include "etass/errors.hpp"
#include "etass/gf2.hpp"
#include "etass/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <fmt/format.h>

namespace etass {

namespace {

// Rho-free monomials are keyed with rho = kVirtualRho - c0, placing them all
// in one fictitious cell; their canonical order there equals their order in
// every real cell (mw, c), since the real rho exponent is c - c0.
constexpr std::uint32_t kVirtualRho = 1U << 24;
constexpr std::int32_t kNoTarget = -1;
constexpr std::int32_t kMissingRule = -2;

struct FreeTable
{
    int extent = 0;
    std::vector<std::vector<Monomial>> keys;
    std::vector<std::vector<std::uint16_t>> c0;

    Monomial at(int mw, std::uint32_t id, int c) const
    {
        Monomial m = keys[static_cast<std::size_t>(mw)][id];
        m.set_rho(static_cast<std::uint32_t>(c) - c0[static_cast<std::size_t>(mw)][id]);
        return m;
    }

    std::optional<std::uint32_t> find(int mw, Monomial free_part) const
    {
        if (mw < 0 || mw > extent)
            return std::nullopt;
        const auto c = static_cast<std::uint32_t>(free_part.bidegree().c);
        free_part.set_rho(kVirtualRho - c);
        const auto& k = keys[static_cast<std::size_t>(mw)];
        auto it = std::lower_bound(k.begin(), k.end(), free_part);
        if (it == k.end() || *it != free_part)
            return std::nullopt;
        return static_cast<std::uint32_t>(it - k.begin());
    }
};

FreeTable build_free_table(int extent, int c_max)
{
    FreeTable t;
    t.extent = extent;
    t.keys.resize(static_cast<std::size_t>(extent + 1));
    t.c0.resize(static_cast<std::size_t>(extent + 1));

    std::vector<GeneratorSymbol> gens;
    for (const auto& g : Truncation::generators_up_to(extent))
        if (g.kind != GeneratorKind::Rho)
            gens.push_back(g);

    Monomial cur;
    auto rec = [&](auto&& self, std::size_t i, int mw, int c) -> void {
        if (i == gens.size()) {
            Monomial k = cur;
            k.set_rho(kVirtualRho - static_cast<std::uint32_t>(c));
            t.keys[static_cast<std::size_t>(mw)].push_back(k);
            return;
        }
        const Bidegree d = gens[i].degree();
        for (std::uint32_t a = 0;; ++a) {
            const int m2 = mw + static_cast<int>(a) * d.mw;
            const int c2 = c + static_cast<int>(a) * d.c;
            if (m2 > extent || c2 > c_max)
                break;
            cur.set_exponent(gens[i], a);
            self(self, i + 1, m2, c2);
        }
        cur.set_exponent(gens[i], 0);
    };
    rec(rec, 0, 0, 0);

    for (std::size_t mw = 0; mw < t.keys.size(); ++mw) {
        auto& k = t.keys[mw];
        std::sort(k.begin(), k.end());
        t.c0[mw].reserve(k.size());
        for (const auto& m : k)
            t.c0[mw].push_back(static_cast<std::uint16_t>(kVirtualRho - m.rho()));
    }
    return t;
}

// delta[mw][id]: the rho-free part of d(id) as an id in column mw - 1, or a
// sentinel. The rho exponent of a nonzero target is always the page index.
using Delta = std::vector<std::vector<std::int32_t>>;

Delta compute_delta(const FreeTable& t, int n)
{
    const Derivation d = bockstein_rule(n);
    const auto r = static_cast<std::uint32_t>(bockstein_page(n));
    Delta delta(t.keys.size());
    parallel_for(t.keys.size(), [&](std::size_t mw) {
        auto& out = delta[mw];
        out.assign(t.keys[mw].size(), kNoTarget);
        for (std::size_t id = 0; id < out.size(); ++id) {
            Monomial m = t.keys[mw][id];
            m.set_rho(0);
            Polynomial img;
            try {
                img = leibniz_apply(d, m);
            } catch (const MissingRule&) {
                out[id] = kMissingRule;
                continue;
            } catch (const NormalizationFailure&) {
                out[id] = kMissingRule;
                continue;
            }
            if (img.is_zero())
                continue;
            if (img.size() != 1 || img.terms()[0].rho() != r)
                throw PageInconsistency(fmt::format("d_{}({}) = {} is not rho^{} times a monomial", r,
                                                    m.label(), img.label(), r));
            Monomial target = img.terms()[0];
            target.set_rho(0);
            auto id2 = t.find(static_cast<int>(mw) - 1, target);
            if (!id2)
                throw PageInconsistency(fmt::format("d_{}({}) leaves the monomial table", r, m.label()));
            out[id] = static_cast<std::int32_t>(*id2);
        }
    });
    return delta;
}

using Row = std::vector<std::vector<std::uint32_t>>; // per mw, sorted ids

// Homology of one row through the gf2 kernel/quotient route.
Row dense_row_homology(const Row& cur, const std::vector<std::vector<std::int32_t>>& out)
{
    Row next(cur.size());
    for (std::size_t mw = 0; mw < cur.size(); ++mw) {
        const std::size_t n_src = cur[mw].size();
        if (n_src == 0)
            continue;
        const std::size_t n_tgt = mw > 0 ? cur[mw - 1].size() : 0;
        std::vector<gf2::F2Vector> images;
        images.reserve(n_src);
        for (std::size_t k = 0; k < n_src; ++k) {
            gf2::F2Vector v(n_tgt);
            if (out[mw][k] >= 0)
                v.set(static_cast<std::size_t>(out[mw][k]));
            images.push_back(std::move(v));
        }
        const auto kernel = gf2::kernel_basis(gf2::F2Matrix::from_rows(n_tgt, std::move(images)).transpose());
        std::vector<gf2::F2Vector> boundaries;
        if (mw + 1 < cur.size())
            for (auto t : out[mw + 1])
                if (t >= 0)
                    boundaries.push_back(gf2::F2Vector::unit(n_src, static_cast<std::size_t>(t)));
        for (const auto& rep : gf2::quotient_basis(boundaries, kernel)) {
            if (rep.popcount() != 1)
                throw RepresentativeNotMonomial("Bockstein homology class has no single-monomial representative");
            next[mw].push_back(cur[mw][rep.lowest_set()]);
        }
        std::sort(next[mw].begin(), next[mw].end());
    }
    return next;
}

void fill_cells(Page& page, const FreeTable& t, const Row& row, int c, int grid)
{
    for (int mw = 0; mw <= grid; ++mw) {
        auto& cell = page.cell({mw, c});
        const auto& ids = row[static_cast<std::size_t>(mw)];
        cell.basis.clear();
        cell.basis.reserve(ids.size());
        for (auto id : ids)
            cell.basis.push_back(t.at(mw, id, c));
    }
}

} // namespace

std::vector<int> bockstein_families(const Truncation& t)
{
    std::vector<int> out;
    for (int n = 2; n <= kMaxVIndex && bockstein_page(n) <= t.grid_mw() + 1; ++n)
        out.push_back(n);
    return out;
}

Page build_e1(const Truncation& t)
{
    Page page(PageKind::Bockstein, 1, t);
    const auto gens = Truncation::generators_up_to(t.grid_mw());
    for (int mw = 0; mw <= t.grid_mw(); ++mw)
        for (int c = 0; c <= t.c_max(); ++c)
            page.cell({mw, c}).basis = enumerate_monomials({mw, c}, gens);
    page.set_monomial_rho_action();
    return page;
}

Derivation bockstein_rule(int n)
{
    if (n < 2 || n > kMaxVIndex)
        throw std::out_of_range(fmt::format("Bockstein family {} out of range", n));
    Derivation d = bockstein_derivation(bockstein_page(n));
    d.rules.push_back({GeneratorSymbol::p(), std::uint32_t{1} << (n - 2),
                       Polynomial(Monomial::of(GeneratorSymbol::rho(), static_cast<std::uint32_t>(bockstein_page(n))) *
                                  Monomial::of(GeneratorSymbol::v(n)))});
    d.cycles.erase(std::remove(d.cycles.begin(), d.cycles.end(), GeneratorSymbol::p()), d.cycles.end());
    d.target_relations = Relations::bockstein(n - 1);
    return d;
}

Derivation bockstein_derivation(int r)
{
    Derivation d;
    d.page = r;
    d.shift = {-1, 0};
    d.p_remainder_is_cycle = true;
    d.cycles = {GeneratorSymbol::rho(), GeneratorSymbol::p()};
    for (int n = 2; n <= kMaxVIndex; ++n)
        d.cycles.push_back(GeneratorSymbol::v(n));
    // Pages before d_r runs: every family with 2^n - 1 < r has been processed.
    int processed = 1;
    while (processed + 1 <= kMaxVIndex && bockstein_page(processed + 1) < r)
        ++processed;
    d.target_relations = Relations::bockstein(processed);
    return d;
}

BocksteinResult run_bockstein(const Truncation& t, const BocksteinOptions& opts)
{
    const int grid = t.grid_mw();
    const int extent = grid + 1;
    const FreeTable table = build_free_table(extent, t.c_max());
    const auto families = bockstein_families(t);

    std::vector<Delta> deltas;
    for (int n : families)
        deltas.push_back(compute_delta(table, n));

    BocksteinResult res;
    if (opts.keep_pages)
        for (int n : families) {
            res.pages.emplace_back(PageKind::Bockstein, bockstein_page(n), t);
            res.pages.back().set_has_differential(true);
        }
    res.einfty = Page(PageKind::Bockstein, Page::kInfinity, t);

    std::atomic<std::size_t> dense_cells{0};
    parallel_for(static_cast<std::size_t>(t.c_max() + 1), [&](std::size_t ci) {
        const int c = static_cast<int>(ci);
        Row cur(static_cast<std::size_t>(extent + 1));
        for (int mw = 0; mw <= extent; ++mw) {
            const auto& c0 = table.c0[static_cast<std::size_t>(mw)];
            for (std::uint32_t id = 0; id < c0.size(); ++id)
                if (c0[id] <= c)
                    cur[static_cast<std::size_t>(mw)].push_back(id);
        }

        for (std::size_t f = 0; f < families.size(); ++f) {
            const auto& delta = deltas[f];
            std::vector<std::vector<std::int32_t>> out(cur.size());
            std::vector<std::vector<std::uint8_t>> hits(cur.size());
            for (std::size_t mw = 0; mw < cur.size(); ++mw)
                hits[mw].assign(cur[mw].size(), 0);
            bool matching = true;
            for (std::size_t mw = 0; mw < cur.size(); ++mw) {
                out[mw].assign(cur[mw].size(), kNoTarget);
                for (std::size_t k = 0; k < cur[mw].size(); ++k) {
                    const std::uint32_t id = cur[mw][k];
                    const std::int32_t tid = delta[mw][id];
                    if (tid == kNoTarget)
                        continue;
                    if (tid == kMissingRule)
                        throw MissingRule(fmt::format("Bockstein d_{} undefined on {}", bockstein_page(families[f]),
                                                      table.at(static_cast<int>(mw), id, c).label()));
                    const auto& below = cur[mw - 1];
                    auto it = std::lower_bound(below.begin(), below.end(), static_cast<std::uint32_t>(tid));
                    if (it == below.end() || *it != static_cast<std::uint32_t>(tid))
                        throw PageInconsistency(
                            fmt::format("Bockstein d_{}({}) is not a class of the page", bockstein_page(families[f]),
                                        table.at(static_cast<int>(mw), id, c).label()));
                    const auto idx = static_cast<std::size_t>(it - below.begin());
                    out[mw][k] = static_cast<std::int32_t>(idx);
                    if (hits[mw - 1][idx]++)
                        matching = false;
                }
            }

            if (opts.keep_pages) {
                Page& page = res.pages[f];
                fill_cells(page, table, cur, c, grid);
                for (int mw = 0; mw <= grid; ++mw) {
                    auto& cell = page.cell({mw, c});
                    cell.diff.assign(cell.size(), {});
                    for (std::size_t k = 0; k < cell.size(); ++k)
                        if (out[static_cast<std::size_t>(mw)][k] >= 0)
                            cell.diff[k].push_back(static_cast<std::uint32_t>(out[static_cast<std::size_t>(mw)][k]));
                }
            }

            if (matching && !opts.dense_homology) {
                Row next(cur.size());
                for (std::size_t mw = 0; mw < cur.size(); ++mw)
                    for (std::size_t k = 0; k < cur[mw].size(); ++k)
                        if (out[mw][k] == kNoTarget && !hits[mw][k])
                            next[mw].push_back(cur[mw][k]);
                cur = std::move(next);
            } else {
                for (const auto& ids : cur)
                    dense_cells += ids.empty() ? 0 : 1;
                cur = dense_row_homology(cur, out);
            }
        }
        fill_cells(res.einfty, table, cur, c, grid);
    });
    res.dense_cells = dense_cells;

    for (auto& p : res.pages)
        p.set_monomial_rho_action();
    res.einfty.set_monomial_rho_action();
    res.towers = compute_towers(res.einfty);
    return res;
}

Page closed_form_einfty(const Truncation& t)
{
    const int grid = t.grid_mw();
    const int c_max = t.c_max();
    Page page(PageKind::Bockstein, Page::kInfinity, t);

    for (int b = 0; b <= c_max; ++b)
        page.cell({0, b}).basis.push_back(Monomial::of(GeneratorSymbol::rho(), static_cast<std::uint32_t>(b)));

    for (int n = 2; n <= kMaxVIndex && bockstein_page(n) <= grid; ++n) {
        const int step = 1 << (n + 1); // P^(2^(n-1)) has degree (2^(n+1), 2^(n+1))
        for (int k = 0; bockstein_page(n) + step * k <= grid; ++k) {
            Monomial base;
            base.set_p(static_cast<std::uint32_t>((1 << (n - 1)) * k));
            base.set_v(n, 1);
            // Extra factors v_m1 ... v_ma with n <= m1 <= ... <= ma.
            auto extend = [&](auto&& self, Monomial m, int from) -> void {
                const Bidegree d = m.bidegree();
                for (int b = 0; b <= (1 << n) - 2 && d.c + b <= c_max; ++b)
                    page.cell({d.mw, d.c + b}).basis.push_back(Monomial(m).set_rho(static_cast<std::uint32_t>(b)));
                for (int j = from; j <= kMaxVIndex && d.mw + bockstein_page(j) <= grid; ++j) {
                    if (d.c + 1 > c_max)
                        break;
                    Monomial m2 = m;
                    m2.set_v(j, m.v(j) + 1);
                    self(self, m2, j);
                }
            };
            if (base.bidegree().c <= c_max)
                extend(extend, base, n);
        }
    }

    for (int mw = 0; mw <= grid; ++mw)
        for (int c = 0; c <= c_max; ++c) {
            auto& b = page.cell({mw, c}).basis;
            std::sort(b.begin(), b.end());
        }
    // rho * x is the next monomial up unless the family's torsion bound is hit.
    for (int mw = 0; mw <= grid; ++mw)
        for (int c = 0; c < c_max; ++c) {
            auto& cell = page.cell({mw, c});
            cell.rho.assign(cell.size(), {});
            for (std::size_t i = 0; i < cell.size(); ++i) {
                const Monomial& m = cell.basis[i];
                const int n = m.min_v();
                if (n != 0 && static_cast<int>(m.rho()) + 1 > (1 << n) - 2)
                    continue;
                Monomial up = m;
                up.set_rho(m.rho() + 1);
                if (auto j = page.index_of({mw, c + 1}, up))
                    cell.rho[i].push_back(*j);
                else
                    throw PageInconsistency("closed-form basis is not closed under rho");
            }
        }
    return page;
}

Report compare_bockstein_einfty(const Page& computed, const Page& closed)
{
    Report rep;
    const auto& t = computed.truncation();
    std::size_t cells = 0;
    std::size_t mismatches = 0;
    for (int mw = 0; mw <= t.mw_max; ++mw)
        for (int c = 0; c <= t.c_max(); ++c) {
            ++cells;
            const auto& a = computed.cell({mw, c}).basis;
            const auto& b = closed.cell({mw, c}).basis;
            if (a.size() != b.size()) {
                ++mismatches;
                rep.add("bockstein.einfty.dim", to_string(Bidegree{mw, c}), false,
                        fmt::format("computed {} vs closed form {}", a.size(), b.size()));
            } else if (a != b) {
                ++mismatches;
                rep.add("bockstein.einfty.basis", to_string(Bidegree{mw, c}), false,
                        "same dimension, different monomial basis");
            }
        }
    rep.add("bockstein.einfty.dim", fmt::format("mw<={} c<={}", t.mw_max, t.c_max()), mismatches == 0,
            fmt::format("{} bidegrees compared, {} mismatches, {} classes", cells, mismatches, computed.reported_dim()));

    const auto ta = compute_towers(computed);
    const auto tb = compute_towers(closed);
    rep.add("bockstein.einfty.towers", fmt::format("mw<={}", t.mw_max), ta == tb,
            fmt::format("{} computed towers, {} closed-form towers", ta.size(), tb.size()));

    std::size_t bad = 0;
    for (const auto& tw : ta) {
        if (tw.bottom.mw == 0)
            continue;
        const int n = tw.generator.min_v();
        if (tw.reaches_boundary || tw.length != (1 << n) - 1) {
            ++bad;
            rep.add("bockstein.einfty.family_length", tw.generator.label(), false,
                    fmt::format("length {} but family v{} requires {}", tw.length_text(), n, (1 << n) - 1));
        }
    }
    rep.add("bockstein.einfty.family_length", fmt::format("{} towers", ta.size()), bad == 0,
            "every v_n-family tower has length 2^n - 1");
    return rep;
}

Report rho_inverted_check(const Page& einfty)
{
    Report rep;
    const auto towers = compute_towers(einfty);
    bool stem0 = false;
    std::size_t violations = 0;
    for (const auto& tw : towers) {
        if (tw.bottom.mw == 0 && tw.infinite)
            stem0 = true;
        if (tw.reaches_boundary && tw.bottom.mw != 0) {
            ++violations;
            rep.add("bockstein.rho_inverted", tw.generator.label(), false,
                    fmt::format("tower at {} reaches the Chow bound", to_string(tw.bottom)));
        }
    }
    rep.add("bockstein.rho_inverted", "mw=0", stem0, "unbounded tower in stem 0");
    rep.add("bockstein.rho_inverted", "0<mw", violations == 0,
            fmt::format("{} towers in positive stems reach the boundary", violations));
    if (einfty.truncation().mw_max >= 3) {
        int len = -1;
        for (const auto& tw : towers)
            if (tw.bottom == Bidegree{3, 1})
                len = tw.length;
        rep.add("bockstein.rho_inverted", "mw=3", len == 3, fmt::format("v2 tower length {}", len));
    }
    return rep;
}

Report check_bockstein_pages(const BocksteinResult& result)
{
    Report rep;
    for (std::size_t i = 0; i < result.pages.size(); ++i) {
        const Page& page = result.pages[i];
        const Page& next = i + 1 < result.pages.size() ? result.pages[i + 1] : result.einfty;
        const auto& t = page.truncation();
        std::size_t dd_bad = 0;
        std::size_t rn_bad = 0;
        for (int mw = 0; mw <= t.internal_mw(); ++mw)
            for (int c = 0; c <= t.c_max(); ++c) {
                const Bidegree d{mw, c};
                const auto dm = page.diff_matrix(d);
                if (mw >= 2) {
                    const auto dm2 = page.diff_matrix(d + page.diff_shift());
                    if (!(dm2 * dm).is_zero())
                        ++dd_bad;
                }
                const std::size_t rank_out = gf2::rank(dm);
                const std::size_t rank_in = gf2::rank(page.diff_matrix(d + Bidegree{1, 0}));
                if (next.dim(d) != page.dim(d) - rank_out - rank_in) {
                    ++rn_bad;
                    rep.add("bockstein.rank_nullity", fmt::format("{} {}", page.label(), to_string(d)), false,
                            fmt::format("next page has {}, expected {}", next.dim(d),
                                        page.dim(d) - rank_out - rank_in));
                }
            }
        rep.add("bockstein.d_squared", page.label(), dd_bad == 0, fmt::format("{} bidegrees with d o d != 0", dd_bad));
        rep.add("bockstein.rank_nullity", page.label(), rn_bad == 0,
                fmt::format("{} bidegrees violate dim E_(r+1) = dim ker - dim im", rn_bad));

        // The page right after r = 2^n - 1 carries no rule, so d vanishes on every class of `next`.
        const Derivation zero = bockstein_derivation(page.r() + 1);
        std::size_t nonzero = 0;
        next.for_each_cell(
            [&](Bidegree, const Cell& cell) {
                for (const auto& m : cell.basis)
                    if (!leibniz_apply(zero, m).is_zero())
                        ++nonzero;
            },
            t.internal_mw());
        rep.add("bockstein.skipped_pages", fmt::format("r={}", page.r() + 1), nonzero == 0,
                fmt::format("{} classes with nonzero d_{}", nonzero, page.r() + 1));
    }
    return rep;
}

} // namespace etass
