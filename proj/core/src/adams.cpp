#include "etass/adams.hpp"

#include "etass/errors.hpp"
#include "etass/parallel.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>

namespace etass {

namespace {

gf2::F2Vector widen(const gf2::F2Vector& v, std::size_t length)
{
    gf2::F2Vector out(length);
    for (auto i : v.support())
        out.set(i);
    return out;
}

SparseVec to_sparse(const gf2::F2Vector& v)
{
    SparseVec s;
    for (auto i : v.support())
        s.push_back(static_cast<std::uint32_t>(i));
    return s;
}

// Lookup of d_r (r >= 3) rule instances by the rho-free part of the source.
class RuleIndex
{
public:
    RuleIndex(int r, const Truncation& t)
    {
        for (const auto& rule : dr_rule(r, t)) {
            Monomial key = rule.source;
            key.set_rho(0);
            by_free_source_.emplace(key, rule);
        }
    }

    /// Target monomial of d_r(m), or nullopt when no rule instance applies.
    std::optional<Monomial> target(const Monomial& m) const
    {
        Monomial key = m;
        key.set_rho(0);
        auto it = by_free_source_.find(key);
        if (it == by_free_source_.end() || m.rho() < it->second.source.rho())
            return std::nullopt;
        const std::uint32_t a = m.rho() - it->second.source.rho();
        if (a >= it->second.target_torsion())
            return std::nullopt;
        Monomial t = it->second.target;
        t.set_rho(t.rho() + a);
        return t;
    }

    const std::map<Monomial, AdamsDiffRule>& rules() const { return by_free_source_; }

private:
    std::map<Monomial, AdamsDiffRule> by_free_source_;
};

struct CellState
{
    gf2::F2Span boundaries;
    std::vector<std::uint32_t> reps;
};

class AdamsEngine
{
public:
    AdamsEngine(const Page& e2, const AdamsOptions& opts) : e2_(e2), t_(e2.truncation()), opts_(opts)
    {
        width_ = static_cast<std::size_t>(t_.c_max() + 1);
        const std::size_t n = static_cast<std::size_t>(t_.grid_mw() + 1) * width_;
        state_.resize(n);
        coords_.resize(n);
        for (int mw = 0; mw <= t_.grid_mw(); ++mw)
            for (int c = 0; c <= t_.c_max(); ++c) {
                auto& s = state_[slot({mw, c})];
                const std::size_t a = e2_.dim({mw, c});
                s.boundaries = gf2::F2Span(a);
                s.reps.resize(a);
                for (std::size_t i = 0; i < a; ++i)
                    s.reps[i] = static_cast<std::uint32_t>(i);
            }
    }

    /// Runs d_2 .. d_last_r. The final page is labelled E_inf when `complete`.
    AdamsResult run(int last_r, bool complete)
    {
        AdamsResult res;
        res.e2 = e2_;
        bool have_e3 = false;
        for (int r = 2;; ++r) {
            const bool final_page = r > last_r;
            build_coordinates(r);
            Page page(PageKind::Adams, final_page && complete ? Page::kInfinity : r, t_);
            fill_basis_and_rho(page, r);
            if (final_page) {
                if (!have_e3) {
                    res.e3 = page;
                    res.e3_coords = coords_;
                }
                res.einfty = std::move(page);
                break;
            }
            const auto images = differential_images(r);
            record_differential(page, images, r);
            if (r == 3) {
                res.e3 = page;
                res.e3_coords = coords_;
                have_e3 = true;
            }
            take_homology(images, r);
            if (opts_.keep_pages)
                res.pages.push_back(std::move(page));
        }
        res.towers = compute_towers(res.einfty);
        return res;
    }

private:
    // Images of d_r on the classes of each source cell: (ambient vector, page vector) in the target cell.
    struct Images
    {
        std::vector<gf2::F2Vector> ambient;
        std::vector<gf2::F2Vector> page;
        bool any = false;
    };

    std::size_t slot(Bidegree d) const
    {
        return static_cast<std::size_t>(d.mw) * width_ + static_cast<std::size_t>(d.c);
    }
    bool in_grid(Bidegree d) const { return e2_.in_grid(d); }
    Bidegree shift(int r) const { return {-1, r - 1}; }

    // Columns whose classes may support d_r.
    int source_mw(int r) const { return r == 2 ? t_.grid_mw() : t_.internal_mw(); }

    void build_coordinates(int r)
    {
        const int top = r == 2 ? t_.grid_mw() : t_.internal_mw();
        parallel_for(state_.size(), [&](std::size_t i) {
            const int mw = static_cast<int>(i / width_);
            if (mw > top) {
                coords_[i] = PageCoordinates();
                return;
            }
            coords_[i] = PageCoordinates(e2_.cell({mw, static_cast<int>(i % width_)}).size(), state_[i].boundaries,
                                         state_[i].reps);
        });
    }

    gf2::F2Vector ambient_vector(Bidegree d, const Polynomial& p) const
    {
        gf2::F2Vector v(e2_.dim(d));
        for (const auto& term : p.terms()) {
            auto idx = e2_.index_of(d, term);
            if (!idx)
                throw PageInconsistency(fmt::format("{} is not an E2 class at {}", term.label(), to_string(d)));
            v.flip(*idx);
        }
        return v;
    }

    void fill_basis_and_rho(Page& page, int r)
    {
        const int top = r == 2 ? t_.grid_mw() : t_.internal_mw();
        const Monomial rho = Monomial::of(GeneratorSymbol::rho());
        parallel_for(static_cast<std::size_t>(top + 1), [&](std::size_t mwi) {
            const int mw = static_cast<int>(mwi);
            for (int c = 0; c <= t_.c_max(); ++c) {
                const Bidegree d{mw, c};
                auto& cell = page.cell(d);
                const auto& amb = e2_.cell(d).basis;
                const auto& st = state_[slot(d)];
                cell.basis.clear();
                for (auto i : st.reps)
                    cell.basis.push_back(amb[i]);
                if (c == t_.c_max())
                    continue;
                cell.rho.assign(cell.size(), {});
                const Bidegree up{mw, c + 1};
                for (std::size_t j = 0; j < cell.size(); ++j) {
                    auto prod = normalize(cell.basis[j] * rho, Relations::ext());
                    if (!prod)
                        continue;
                    const auto pv = coords_[slot(up)].project(ambient_vector(up, Polynomial(prod->monomial())));
                    if (!pv)
                        throw PageInconsistency(fmt::format("{}: rho * {} is not a cycle", page.label(),
                                                            cell.basis[j].label()));
                    cell.rho[j] = to_sparse(*pv);
                }
            }
        });
    }

    std::vector<Images> differential_images(int r)
    {
        std::vector<Images> images(state_.size());
        const Derivation d2 = d2_rule();
        std::optional<RuleIndex> rules;
        if (r >= 3)
            rules.emplace(r, t_);
        const int top = source_mw(r);

        parallel_for(static_cast<std::size_t>(top + 1), [&](std::size_t mwi) {
            const int mw = static_cast<int>(mwi);
            if (mw == 0)
                return;
            for (int c = 0; c <= t_.c_max(); ++c) {
                const Bidegree src{mw, c};
                const Bidegree tgt = src + shift(r);
                const auto& st = state_[slot(src)];
                if (st.reps.empty())
                    continue;
                auto& im = images[slot(src)];
                const auto& amb = e2_.cell(src).basis;
                for (auto i : st.reps) {
                    Polynomial value;
                    if (r == 2)
                        value = leibniz_apply(d2, amb[i]);
                    else if (auto target = rules->target(amb[i]))
                        value = Polynomial(*target);
                    if (!value.is_zero() && !in_grid(tgt))
                        throw PageInconsistency(fmt::format("d_{}({}) leaves the grid", r, amb[i].label()));
                    if (value.is_zero()) {
                        im.ambient.emplace_back(in_grid(tgt) ? e2_.dim(tgt) : 0);
                        im.page.emplace_back(in_grid(tgt) ? coords_[slot(tgt)].dim() : 0);
                        continue;
                    }
                    im.any = true;
                    auto av = ambient_vector(tgt, value);
                    auto pv = coords_[slot(tgt)].project(av);
                    if (!pv)
                        throw PageInconsistency(
                            fmt::format("d_{}({}) = {} is not a class of the page", r, amb[i].label(), value.label()));
                    im.ambient.push_back(std::move(av));
                    im.page.push_back(std::move(*pv));
                }
            }
        });

        if (rules)
            check_rule_sources(*rules, r);
        return images;
    }

    // Every rule source inside the window must be one of the chosen representatives,
    // so that applying rules to representatives defines d_r on the whole page.
    void check_rule_sources(const RuleIndex& rules, int r) const
    {
        for (const auto& [key, rule] : rules.rules()) {
            for (std::uint32_t a = 0; a < rule.target_torsion(); ++a) {
                Monomial src = rule.source;
                src.set_rho(src.rho() + a);
                const Bidegree d = src.bidegree();
                if (d.mw > source_mw(r) || d.c > t_.c_max())
                    continue;
                auto idx = e2_.index_of(d, src);
                if (!idx)
                    throw PageInconsistency(fmt::format("d_{} source {} is not an E2 class", r, src.label()));
                const auto& reps = state_[slot(d)].reps;
                if (!std::binary_search(reps.begin(), reps.end(), *idx))
                    throw RepresentativeNotMonomial(
                        fmt::format("d_{} source {} is not a representative on E_{}", r, src.label(), r));
            }
        }
    }

    void record_differential(Page& page, const std::vector<Images>& images, int r)
    {
        page.set_has_differential(true);
        for (int mw = 1; mw <= source_mw(r); ++mw)
            for (int c = 0; c <= t_.c_max(); ++c) {
                const auto& im = images[slot({mw, c})];
                if (!im.any)
                    continue;
                auto& cell = page.cell({mw, c});
                cell.diff.clear();
                for (const auto& v : im.page)
                    cell.diff.push_back(to_sparse(v));
            }
    }

    void take_homology(const std::vector<Images>& images, int r)
    {
        std::vector<CellState> next(state_.size());
        const int top = t_.internal_mw();
        parallel_for(state_.size(), [&](std::size_t i) {
            const int mw = static_cast<int>(i / width_);
            const int c = static_cast<int>(i % width_);
            if (mw > top)
                return; // stale beyond the exact window
            const Bidegree here{mw, c};
            const auto& st = state_[i];
            const auto& out = images[i];
            const Bidegree from = here - shift(r);
            const Images* in = in_grid(from) ? &images[slot(from)] : nullptr;
            const bool has_in = in && in->any;

            CellState ns;
            ns.boundaries = st.boundaries;
            if (!out.any && !has_in) {
                ns.reps = st.reps;
                next[i] = std::move(ns);
                return;
            }
            const std::size_t k = st.reps.size();
            std::vector<gf2::F2Vector> kernel;
            if (out.any) {
                const std::size_t tdim = out.page.front().size();
                kernel = gf2::kernel_basis(gf2::F2Matrix::from_rows(tdim, out.page).transpose());
            } else {
                for (std::size_t j = 0; j < k; ++j)
                    kernel.push_back(gf2::F2Vector::unit(k, j));
            }
            std::vector<gf2::F2Vector> image;
            if (has_in) {
                for (std::size_t j = 0; j < in->page.size(); ++j)
                    if (!in->page[j].is_zero()) {
                        image.push_back(in->page[j]);
                        ns.boundaries.insert(in->ambient[j]);
                    }
            }
            for (const auto& rep : gf2::quotient_basis(image, kernel)) {
                if (rep.popcount() != 1)
                    throw RepresentativeNotMonomial(
                        fmt::format("E_{} class at {} has no single-monomial representative", r + 1, to_string(here)));
                ns.reps.push_back(st.reps[rep.lowest_set()]);
            }
            std::sort(ns.reps.begin(), ns.reps.end());
            next[i] = std::move(ns);
        });
        // Cells beyond the exact window stay empty from here on.
        state_ = std::move(next);
    }

    const Page& e2_;
    Truncation t_;
    AdamsOptions opts_;
    std::size_t width_ = 0;
    std::vector<CellState> state_;
    std::vector<PageCoordinates> coords_;
};

} // namespace

Derivation d2_rule()
{
    Derivation d;
    d.page = 2;
    d.shift = {-1, 1};
    d.cycles = {GeneratorSymbol::rho(), GeneratorSymbol::p(), GeneratorSymbol::v(2)};
    for (int n = 3; n <= kMaxVIndex; ++n)
        d.rules.push_back({GeneratorSymbol::v(n), 1, Polynomial(Monomial::of(GeneratorSymbol::v(n - 1), 2))});
    d.target_relations = Relations::ext();
    return d;
}

std::vector<AdamsDiffRule> dr_rule(int r, const Truncation& t)
{
    std::vector<AdamsDiffRule> out;
    if (r < 3)
        return out;
    for (int n = r + 1; n <= kMaxVIndex && (1 << n) - 1 <= t.internal_mw(); ++n) {
        const int s0 = (1 << n) - (1 << (n - r + 2)) - r + 2;
        for (int k = 0;; ++k) {
            AdamsDiffRule rule;
            rule.r = r;
            rule.n = n;
            rule.k = k;
            rule.source.set_rho(static_cast<std::uint32_t>(s0));
            rule.source.set_p(static_cast<std::uint32_t>((1 << (n - 1)) * k));
            rule.source.set_v(n, 1);
            if (rule.source.bidegree().mw > t.internal_mw())
                break;
            rule.target.set_p(static_cast<std::uint32_t>((1 << (n - 1)) * k + (1 << (n - 2)) - (1 << (n - r))));
            rule.target.set_v(n - r + 1, 2);
            out.push_back(rule);
        }
    }
    return out;
}

int adams_r_max(const Truncation& t)
{
    int r = 2;
    for (int n = 2; n <= kMaxVIndex && (1 << n) - 1 <= t.internal_mw(); ++n)
        r = std::max(r, n - 1);
    return r;
}

PageCoordinates::PageCoordinates(std::size_t ambient, const gf2::F2Span& boundaries, std::vector<std::uint32_t> reps)
    : ambient_(ambient), reps_(std::move(reps)), echelon_(ambient + reps_.size())
{
    const std::size_t len = ambient_ + reps_.size();
    for (const auto& b : boundaries.basis())
        echelon_.insert(widen(b, len));
    for (std::size_t j = 0; j < reps_.size(); ++j) {
        gf2::F2Vector row(len);
        row.set(reps_[j]);
        row.set(ambient_ + j);
        if (!echelon_.insert(row))
            throw PageInconsistency("page representative lies in the boundary span");
    }
}

std::optional<gf2::F2Vector> PageCoordinates::project(const gf2::F2Vector& ambient_vec) const
{
    if (ambient_vec.size() != ambient_)
        throw std::invalid_argument("PageCoordinates::project length mismatch");
    const auto residual = echelon_.reduce(widen(ambient_vec, ambient_ + reps_.size()));
    if (residual.lowest_set() < ambient_)
        return std::nullopt;
    gf2::F2Vector coords(reps_.size());
    for (auto i : residual.support())
        coords.set(i - ambient_);
    return coords;
}

std::optional<gf2::F2Vector> AdamsResult::project_e3(Bidegree d, const Polynomial& p) const
{
    if (!e3.in_grid(d) || d.mw > e3.truncation().internal_mw())
        return std::nullopt;
    const auto& coords = e3_coords.at(static_cast<std::size_t>(d.mw) *
                                          static_cast<std::size_t>(e3.truncation().c_max() + 1) +
                                      static_cast<std::size_t>(d.c));
    gf2::F2Vector v(coords.ambient());
    const Polynomial normal = normalize(p, Relations::ext());
    for (const auto& term : normal.terms()) {
        auto idx = e2.index_of(d, term);
        if (!idx)
            return std::nullopt;
        v.flip(*idx);
    }
    return coords.project(v);
}

AdamsResult run_adams(const Page& e2, const AdamsOptions& opts)
{
    AdamsEngine engine(e2, opts);
    return engine.run(adams_r_max(e2.truncation()), true);
}

Page compute_e3(const Page& e2)
{
    AdamsEngine engine(e2, {false});
    return engine.run(2, false).e3;
}

} // namespace etass
