#include "etass/adams.hpp"

#include "etass/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <set>
#include <tuple>

namespace etass {

namespace {

Monomial make(std::uint32_t rho, std::uint32_t p, int n, std::uint32_t vexp)
{
    Monomial m;
    m.set_rho(rho).set_p(p);
    if (n)
        m.set_v(n, vexp);
    return m;
}

void push_if_reported(std::vector<ExpectedTower>& out, const Truncation& t, Monomial gen, int length)
{
    const Bidegree b = gen.bidegree();
    if (b.mw > t.mw_max || b.c > t.c_max())
        return;
    // A tower cut by the Chow bound keeps only what fits.
    out.push_back({gen, b, std::min(length, t.c_max() - b.c + 1), false});
}

ExpectedTower unit_tower(const Truncation& t) { return {Monomial::one(), {0, 0}, t.c_max() + 1, true}; }

bool tower_matches(const TorsionTower& got, const ExpectedTower& want)
{
    if (got.generator != want.generator || got.bottom != want.bottom)
        return false;
    if (want.infinite)
        return got.infinite;
    return !got.reaches_boundary && got.length == want.length;
}

// Classes of the E3 closed form: rho-multiples of its generators.
std::set<Monomial> e3_class_set(const Truncation& t)
{
    std::set<Monomial> out;
    for (const auto& g : closed_form_e3(t))
        for (int i = 0; i < g.length; ++i)
            out.insert(Monomial(g.generator).set_rho(g.generator.rho() + static_cast<std::uint32_t>(i)));
    return out;
}

} // namespace

std::vector<ExpectedTower> closed_form_e3(const Truncation& t)
{
    std::vector<ExpectedTower> out{unit_tower(t)};
    for (int n = 2; n <= kMaxVIndex && (1 << n) - 1 <= t.mw_max; ++n) {
        const auto h = static_cast<std::uint32_t>(1 << (n - 1));
        // rho^(2^(n-1) - 1) P^(2^(n-1) k) v_n, torsion 2^(n-1); for n = 2 this is P^(2k) v2 with torsion 3.
        for (std::uint32_t k = 0;; ++k) {
            const Monomial g = n == 2 ? make(0, 2 * k, 2, 1) : make(h - 1, h * k, n, 1);
            if (g.bidegree().mw > t.mw_max)
                break;
            push_if_reported(out, t, g, n == 2 ? 3 : static_cast<int>(h));
        }
        // P^(2^(n-1)(2j+1)) v_n^2, torsion 2^n - 1.
        for (std::uint32_t j = 0;; ++j) {
            const Monomial g = make(0, h * (2 * j + 1), n, 2);
            if (g.bidegree().mw > t.mw_max)
                break;
            push_if_reported(out, t, g, (1 << n) - 1);
        }
    }
    std::sort(out.begin(), out.end(), [](const ExpectedTower& a, const ExpectedTower& b) {
        return std::tie(a.bottom.mw, a.bottom.c) < std::tie(b.bottom.mw, b.bottom.c);
    });
    return out;
}

std::vector<ExpectedTower> closed_form_adams_einfty(const Truncation& t)
{
    std::vector<ExpectedTower> out{unit_tower(t)};
    for (int n = 2; n <= kMaxVIndex && (1 << n) - 1 <= t.mw_max; ++n) {
        const auto h = static_cast<std::uint32_t>(1 << (n - 1));
        for (std::uint32_t k = 0;; ++k) {
            const Monomial g = make(static_cast<std::uint32_t>((1 << n) - n - 2), h * k, n, 1);
            if (g.bidegree().mw > t.mw_max)
                break;
            push_if_reported(out, t, g, n + 1);
        }
    }
    std::sort(out.begin(), out.end(), [](const ExpectedTower& a, const ExpectedTower& b) {
        return std::tie(a.bottom.mw, a.bottom.c) < std::tie(b.bottom.mw, b.bottom.c);
    });
    return out;
}

Report compare_towers(const std::string& check, const Page& page, const std::vector<ExpectedTower>& expected)
{
    Report rep;
    const auto got = compute_towers(page);
    std::map<std::pair<int, int>, std::vector<const TorsionTower*>> by_bottom;
    for (const auto& tw : got)
        by_bottom[{tw.bottom.mw, tw.bottom.c}].push_back(&tw);

    std::size_t matched = 0;
    for (const auto& want : expected) {
        auto it = by_bottom.find({want.bottom.mw, want.bottom.c});
        const TorsionTower* hit = nullptr;
        if (it != by_bottom.end())
            for (auto* tw : it->second)
                if (tower_matches(*tw, want))
                    hit = tw;
        if (hit) {
            ++matched;
        } else {
            rep.add(check, fmt::format("{} at {}", want.generator.label(), to_string(want.bottom)), false,
                    fmt::format("expected tower of length {} not found on {}",
                                want.infinite ? std::string("inf") : std::to_string(want.length), page.label()));
        }
    }
    for (const auto& tw : got) {
        const bool expected_here = std::any_of(expected.begin(), expected.end(),
                                               [&](const ExpectedTower& w) { return tower_matches(tw, w); });
        if (!expected_here)
            rep.add(check, fmt::format("{} at {}", tw.generator.label(), to_string(tw.bottom)), false,
                    fmt::format("unexpected tower of length {} on {}", tw.length_text(), page.label()));
    }
    rep.add(check, fmt::format("{} mw<={}", page.label(), page.truncation().mw_max),
            matched == expected.size() && got.size() == expected.size(),
            fmt::format("{} of {} expected towers matched, {} computed", matched, expected.size(), got.size()));
    return rep;
}

Report check_e3_products(const AdamsResult& result)
{
    Report rep;
    const auto& t = result.e3.truncation();
    const auto classes = e3_class_set(t);
    const auto gens = closed_form_e3(t);

    auto product_on_e3 = [&](const Monomial& a, const Monomial& b) -> std::optional<gf2::F2Vector> {
        const Monomial prod = a * b;
        Polynomial p;
        if (auto n = normalize(prod, Relations::ext()))
            p = Polynomial(n->monomial());
        return result.project_e3(prod.bidegree(), p);
    };
    // Expected value: the normalized product if it is one of the closed-form E3 classes, else zero.
    auto expected_on_e3 = [&](const Monomial& a, const Monomial& b) -> std::optional<Monomial> {
        auto n = normalize(a * b, Relations::ext());
        if (n && classes.count(n->monomial()))
            return n->monomial();
        return std::nullopt;
    };
    auto matches = [&](const gf2::F2Vector& v, Bidegree d, const std::optional<Monomial>& want) {
        if (!want)
            return v.is_zero();
        auto idx = result.e3.index_of(d, *want);
        return idx && v.popcount() == 1 && v.get(*idx);
    };

    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            const Monomial& a = gens[i].generator;
            const Monomial& b = gens[j].generator;
            const Bidegree d = a.bidegree() + b.bidegree();
            if (d.mw > t.mw_max || d.c > t.c_max())
                continue;
            const auto got = product_on_e3(a, b);
            const auto want = expected_on_e3(a, b);
            ++checked;
            if (!got || !matches(*got, d, want)) {
                ++bad;
                rep.add("adams.e3_products", fmt::format("{} * {}", a.label(), b.label()), false,
                        fmt::format("expected {}", want ? want->label() : std::string("0")));
            }
        }
    rep.add("adams.e3_products", fmt::format("{} generator pairs", checked), bad == 0,
            "every product of E3 generators equals its projected E2 product");

    // Named relations.
    struct Named
    {
        const char* a;
        const char* b;
        const char* product; // "0" when the product vanishes on E3
    };
    const Named named[] = {
        {"v2", "P^2v2", "P^2v2^2"},
        {"rho^3P^4v3", "rho^3P^8v3", "rho^6P^12v3^2"},
        {"P^4v2", "P^6v2", "P^10v2^2"},
        {"v2", "v2", "0"},
        {"P^2v2", "rho^3v3", "0"},
        {"P^2v2", "rho^3P^4v3", "0"},
    };
    for (const auto& nm : named) {
        const Monomial a = Monomial::parse(nm.a);
        const Monomial b = Monomial::parse(nm.b);
        const Bidegree d = a.bidegree() + b.bidegree();
        if (d.mw > t.mw_max)
            continue;
        const auto got = product_on_e3(a, b);
        std::optional<Monomial> want;
        if (std::string(nm.product) != "0")
            want = Monomial::parse(nm.product);
        rep.add("adams.e3_products", fmt::format("{} * {} = {}", nm.a, nm.b, nm.product), got && matches(*got, d, want),
                got ? fmt::format("{} coordinates set on E3", got->popcount()) : "product is not an E3 cycle");
    }
    return rep;
}

Report check_adams_pages(const AdamsResult& result)
{
    Report rep;
    const auto& t = result.einfty.truncation();
    rep.add("adams.degrees", "d2", d2_rule().degrees_consistent(), "every d2 generator rule has degree (-1, 1)");
    for (int r = 3; r <= adams_r_max(t); ++r) {
        std::size_t bad = 0;
        const auto rules = dr_rule(r, t);
        for (const auto& rule : rules)
            if (rule.target.bidegree() != rule.source.bidegree() + Bidegree{-1, r - 1})
                ++bad;
        rep.add("adams.degrees", fmt::format("d{}", r), bad == 0,
                fmt::format("{} rules, {} with the wrong degree", rules.size(), bad));
    }

    for (std::size_t i = 0; i < result.pages.size(); ++i) {
        const Page& page = result.pages[i];
        const Page& next = i + 1 < result.pages.size() ? result.pages[i + 1] : result.einfty;
        std::size_t dd_bad = 0;
        std::size_t rn_bad = 0;
        for (int mw = 0; mw <= t.mw_max; ++mw)
            for (int c = 0; c <= t.c_max(); ++c) {
                const Bidegree d{mw, c};
                const auto dm = page.diff_matrix(d);
                const Bidegree below = d + page.diff_shift();
                if (page.in_grid(below) && !(page.diff_matrix(below) * dm).is_zero())
                    ++dd_bad;
                const Bidegree above = d - page.diff_shift();
                const std::size_t rank_in = page.in_grid(above) ? gf2::rank(page.diff_matrix(above)) : 0;
                if (next.dim(d) + gf2::rank(dm) + rank_in != page.dim(d))
                    ++rn_bad;
            }
        rep.add("adams.d_squared", page.label(), dd_bad == 0, fmt::format("{} bidegrees with d o d != 0", dd_bad));
        rep.add("adams.rank_nullity", page.label(), rn_bad == 0,
                fmt::format("{} bidegrees violate dim E_(r+1) = dim ker - dim im", rn_bad));
    }
    return rep;
}

Report mod4_vanishing_scan(const Page& einfty)
{
    Report rep;
    const auto& t = einfty.truncation();
    std::size_t bad = 0;
    for (int mw = 1; mw <= t.mw_max; ++mw) {
        if (mw % 4 != 1 && mw % 4 != 2)
            continue;
        std::size_t n = 0;
        for (int c = 0; c <= t.c_max(); ++c)
            n += einfty.dim({mw, c});
        if (n) {
            ++bad;
            rep.add("adams.mod4_vanishing", fmt::format("mw={}", mw), false, fmt::format("{} classes", n));
        }
    }
    rep.add("adams.mod4_vanishing", fmt::format("0<mw<={}", t.mw_max), bad == 0,
            fmt::format("{} stems = 1, 2 mod 4 carry classes", bad));
    return rep;
}

Report exhaustiveness_scan(const AdamsResult& result)
{
    Report rep;
    const auto& t = result.e3.truncation();
    std::map<Monomial, int> hits;
    for (int r = 3; r <= adams_r_max(t); ++r)
        for (const auto& rule : dr_rule(r, t))
            for (std::uint32_t a = 0; a < rule.target_torsion(); ++a) {
                Monomial tg = rule.target;
                tg.set_rho(a);
                ++hits[tg];
            }
    std::size_t classes = 0;
    std::size_t bad = 0;
    for (int mw = 2; mw <= t.mw_max; mw += 4)
        for (int c = 0; c <= t.c_max(); ++c)
            for (const auto& m : result.e3.cell({mw, c}).basis) {
                ++classes;
                const int h = hits.count(m) ? hits[m] : 0;
                if (h != 1) {
                    ++bad;
                    rep.add("adams.exhaustive", m.label(), false, fmt::format("hit by {} rule instances", h));
                }
            }
    rep.add("adams.exhaustive", fmt::format("mw=2 mod 4, mw<={}", t.mw_max), bad == 0,
            fmt::format("{} E3 classes, {} not hit exactly once", classes, bad));
    return rep;
}

Report alternative_target_scan(const AdamsResult& result)
{
    Report rep;
    const auto& t = result.einfty.truncation();
    for (const auto& page : result.pages) {
        if (page.r() < 3)
            continue;
        std::set<Monomial> sources;
        for (const auto& rule : dr_rule(page.r(), t)) {
            Monomial s = rule.source;
            s.set_rho(0);
            sources.insert(s);
        }
        std::size_t open = 0;
        std::size_t generators = 0;
        std::string examples;
        for (const auto& tw : compute_towers(page)) {
            if (tw.bottom.mw == 0)
                continue;
            ++generators;
            Monomial key = tw.generator;
            key.set_rho(0);
            if (sources.count(key))
                continue;
            // Any class in the tower could support d_r into its own target bidegree.
            std::size_t candidates = 0;
            for (int i = 0; i < tw.length; ++i)
                candidates += page.dim(tw.bottom + Bidegree{0, i} + page.diff_shift());
            if (candidates) {
                ++open;
                if (examples.size() < 200)
                    examples += fmt::format(" {}", tw.generator.label());
            }
        }
        rep.add("adams.alternative_targets", page.label(), open == 0,
                fmt::format("{} of {} tower generators without a rule face a nonzero target bidegree{}", open,
                            generators, examples.empty() ? "" : ":" + examples));
    }
    return rep;
}

Report ext_finiteness_scan(const Page& einfty)
{
    Report rep;
    const auto& t = einfty.truncation();
    std::size_t bad = 0;
    for (int mw = 1; mw <= t.mw_max; ++mw)
        for (int c = mw + 1; c <= t.c_max(); ++c)
            if (einfty.dim({mw, c}))
                ++bad;
    for (const auto& tw : compute_towers(einfty))
        if (tw.bottom.mw > 0 && tw.reaches_boundary)
            ++bad;
    rep.add("ext.finiteness", fmt::format("0<mw<={}", t.mw_max), bad == 0,
            fmt::format("{} violations of finiteness or c <= mw", bad));
    return rep;
}

} // namespace etass
