#include "etass/ext.hpp"

#include "etass/bockstein.hpp"
#include "etass/errors.hpp"

#include <fmt/format.h>
#include <random>

namespace etass {

namespace {

Monomial mono(std::uint32_t rho, std::uint32_t p, std::initializer_list<std::pair<int, std::uint32_t>> vs = {})
{
    Monomial m;
    m.set_rho(rho).set_p(p);
    for (auto [n, e] : vs)
        m.set_v(n, m.v(n) + e);
    return m;
}

std::uint32_t pow2(int e) { return std::uint32_t{1} << e; }

bool single_family(const Monomial& m, int& n)
{
    if (!m.has_v() || m.min_v() != m.max_v())
        return false;
    n = m.min_v();
    return true;
}

// One bracket family instance. `nullhomotopy_left` selects which adjacent
// product is the Bockstein boundary rho^(2^m - 1) v_m: the left pair (a, b)
// for the first family, the right pair (b, c) for the second.
void check_bracket(Report& rep, const std::string& name, const Monomial& a, const Monomial& b, const Monomial& c,
                   bool nullhomotopy_left, int m, const Monomial& claimed, const std::string& note)
{
    const std::string inst = fmt::format("{} <{}, {}, {}>", name, a.label(), b.label(), c.label());

    // The null-homotopy comes from the Bockstein rule of family m.
    const Derivation rule = bockstein_rule(m);
    const DerivationRule& pr = rule.rules.front();
    const Monomial boundary = nullhomotopy_left ? a * b : b * c;
    const bool rule_matches = pr.image.terms().size() == 1 && pr.image.terms().front() == boundary;
    const Monomial hom = Monomial::of(pr.generator, pr.unit);
    const auto value = normalize(nullhomotopy_left ? hom * c : a * hom, Relations::ext());
    rep.add("ext.massey.value", inst,
            rule_matches && value && value->monomial() == claimed,
            fmt::format("null-homotopy {} of {}; value {}, claimed {}{}", hom.label(), boundary.label(),
                        value ? value->label() : std::string("0"), claimed.label(), note));

    const Bidegree sum = a.bidegree() + b.bidegree() + c.bidegree() + Bidegree{1, 0};
    rep.add("ext.massey.degree", inst, sum == claimed.bidegree(),
            fmt::format("entries sum to {} + (1,0) = {}, value at {}", to_string(sum - Bidegree{1, 0}),
                        to_string(sum), to_string(claimed.bidegree())));

    const bool entries_nonzero = is_normal(a) && is_normal(b) && is_normal(c);
    const bool ab_zero = !normalize(a * b, Relations::ext());
    const bool bc_zero = !normalize(b * c, Relations::ext());
    rep.add("ext.massey.annihilation", inst, entries_nonzero && ab_zero && bc_zero,
            fmt::format("entries nonzero: {}; a*b = 0: {}; b*c = 0: {}", entries_nonzero, ab_zero, bc_zero));
}

} // namespace

Report unique_detection_scan(const Page& page)
{
    Report rep;
    const auto& t = page.truncation();
    std::size_t scanned = 0;
    std::size_t collisions = 0;
    page.for_each_cell(
        [&](Bidegree d, const Cell& cell) {
            if (!t.reported(d))
                return;
            for (const auto& m : cell.basis) {
                int n = 0;
                if (m.rho() != 0 || !single_family(m, n) || m.v(n) > 2)
                    continue;
                ++scanned;
                for (const auto& other : cell.basis)
                    if (other.rho() > 0) {
                        ++collisions;
                        rep.add("ext.unique_detection", m.label(), false,
                                fmt::format("rho-divisible {} shares {}", other.label(), to_string(d)));
                    }
            }
        },
        t.mw_max);
    rep.add("ext.unique_detection", fmt::format("mw<={}", t.mw_max), collisions == 0,
            fmt::format("{} elements P^(2^(n-1)k)v_n and P^(2^(n-1)k)v_n^2 scanned, {} collisions", scanned,
                        collisions));

    // The restriction to those shapes matters: other products do collide.
    const Monomial x = mono(0, 2, {{2, 1}, {5, 1}});
    const Monomial y = mono(4, 0, {{3, 6}});
    if (t.reported(x.bidegree())) {
        const bool both = page.index_of(x).has_value() && page.index_of(y).has_value();
        rep.add("ext.unique_detection.witness", fmt::format("{} / {}", x.label(), y.label()),
                both && x.bidegree() == y.bidegree(),
                fmt::format("both basis elements at {}", to_string(x.bidegree())));
    }
    return rep;
}

Report unique_detection_scan(int mw_max)
{
    Truncation t;
    t.mw_max = mw_max;
    return unique_detection_scan(closed_form_einfty(t));
}

Report vanishing_scan(const Page& einfty)
{
    Report rep;
    const auto& t = einfty.truncation();
    std::size_t bad = 0;
    int count = 0;
    for (int i = 1; 2 * i <= t.mw_max && 2 * i <= t.c_max(); ++i) {
        ++count;
        const std::size_t dim = einfty.dim({2 * i, 2 * i});
        if (dim) {
            ++bad;
            rep.add("ext.vanishing", fmt::format("({},{})", 2 * i, 2 * i), false, fmt::format("dim {}", dim));
        }
    }
    rep.add("ext.vanishing", fmt::format("{} mw<={}", einfty.label(), t.mw_max), bad == 0,
            fmt::format("{} bidegrees (2i,2i) scanned, {} nonzero", count, bad));
    return rep;
}

Report massey_index_check(int n, int k, int m)
{
    if (n < 2 || m <= n || k < 0 || m > kMaxVIndex)
        throw std::invalid_argument(fmt::format("bracket indices need m > n >= 2, k >= 0 (n={}, k={}, m={})", n, k, m));
    Report rep;
    const std::uint32_t pk = pow2(n - 1) * static_cast<std::uint32_t>(k);
    const Monomial claimed = mono(0, pk + pow2(m - 2), {{n, 1}});
    const Monomial x = mono(0, pk, {{n, 1}});

    const std::string note = k == 0 ? "; k = 0 lies outside the k >= 1 range of this family" : "";
    check_bracket(rep, fmt::format("n={} k={} m={}", n, k, m), mono(pow2(m) - pow2(n), 0, {{m, 1}}),
                  mono(pow2(n) - 1, 0), x, true, m, claimed, note);
    check_bracket(rep, fmt::format("n={} k={} m={}", n, k, m), x, mono(pow2(m) - 2, 0, {{m, 1}}), mono(1, 0), false,
                  m, claimed, "");
    return rep;
}

Report massey_index_sweep(int mw_max)
{
    Report rep;
    std::size_t instances = 0;
    for (int n = 2; n <= kMaxVIndex; ++n)
        for (int m = n + 1; m <= kMaxVIndex; ++m)
            for (int k = 0;; ++k) {
                const Monomial target = mono(0, pow2(n - 1) * static_cast<std::uint32_t>(k) + pow2(m - 2), {{n, 1}});
                if (target.bidegree().mw > mw_max)
                    break;
                ++instances;
                rep.merge(massey_index_check(n, k, m));
            }
    rep.add("ext.massey", fmt::format("target mw<={}", mw_max), rep.ok(),
            fmt::format("{} (n, k, m) instances, two bracket families each", instances));
    return rep;
}

Report product_consistency(int mw_max, int trials, std::uint64_t seed)
{
    Report rep;
    Truncation t;
    t.mw_max = mw_max;
    const Page page = closed_form_einfty(t);
    std::vector<NormalMonomial> basis;
    page.for_each_cell(
        [&](Bidegree d, const Cell& cell) {
            if (t.reported(d))
                for (const auto& m : cell.basis)
                    basis.push_back(*normalize(m));
        },
        mw_max);

    auto mul = [](const std::optional<NormalMonomial>& a,
                  const std::optional<NormalMonomial>& b) -> std::optional<NormalMonomial> {
        if (!a || !b)
            return std::nullopt;
        return multiply(*a, *b);
    };
    auto text = [](const std::optional<NormalMonomial>& x) { return x ? x->label() : std::string("0"); };

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.empty() ? 0 : basis.size() - 1);
    std::size_t bad = 0;
    for (int i = 0; i < trials && !basis.empty(); ++i) {
        const auto& a = basis[pick(rng)];
        const auto& b = basis[pick(rng)];
        const auto& c = basis[pick(rng)];
        const auto ab = multiply(a, b);
        const auto ba = multiply(b, a);
        const auto left = mul(ab, c);
        const auto right = mul(a, multiply(b, c));
        const bool closed = !ab || !t.reported(ab->bidegree()) || page.index_of(ab->monomial()).has_value();
        if (ab != ba || left != right || !closed) {
            ++bad;
            rep.add("ext.products", fmt::format("{} {} {}", a.label(), b.label(), c.label()), false,
                    fmt::format("ab={} ba={} (ab)c={} a(bc)={} closed={}", text(ab), text(ba), text(left),
                                text(right), closed));
        }
    }
    rep.add("ext.products", fmt::format("{} random triples, seed {}", trials, seed), bad == 0,
            fmt::format("{} basis elements sampled; {} failures of associativity, commutativity or closure",
                        basis.size(), bad));

    // P-shift identity on the family generators.
    std::size_t shift_checked = 0;
    std::size_t shift_bad = 0;
    for (int n = 2; (1 << n) - 1 <= mw_max; ++n)
        for (int m = n; (1 << m) - 1 <= mw_max; ++m)
            for (std::uint32_t k = 0; 4 * pow2(n - 1) * k <= static_cast<std::uint32_t>(mw_max); ++k)
                for (std::uint32_t j = 0; 4 * pow2(m - 1) * j <= static_cast<std::uint32_t>(mw_max); ++j) {
                    const auto x = normalize(mono(0, pow2(n - 1) * k, {{n, 1}}));
                    const auto y = normalize(mono(0, pow2(m - 1) * j, {{m, 1}}));
                    const Monomial want = mono(0, pow2(n - 1) * (k + pow2(m - n) * j), {{n, 1}, {m, 1}});
                    const auto got = multiply(*x, *y);
                    ++shift_checked;
                    if (!got || got->monomial() != want) {
                        ++shift_bad;
                        rep.add("ext.p_shift", fmt::format("{} * {}", x->label(), y->label()), false,
                                fmt::format("got {}, expected {}", text(got), want.label()));
                    }
                }
    rep.add("ext.p_shift", fmt::format("generator pairs mw<={}", mw_max), shift_bad == 0,
            fmt::format("{} products P^(2^(n-1)k)v_n * P^(2^(m-1)j)v_m checked", shift_checked));

    struct Example
    {
        Monomial a, b, product;
    };
    const Example examples[] = {
        {mono(0, 2, {{2, 1}}), mono(0, 4, {{2, 1}}), mono(0, 6, {{2, 2}})},
        {mono(0, 4, {{2, 1}}), mono(0, 8, {{3, 1}}), mono(0, 12, {{2, 1}, {3, 1}})},
    };
    for (const auto& ex : examples) {
        const auto got = multiply(*normalize(ex.a), *normalize(ex.b));
        rep.add("ext.p_shift", fmt::format("{} * {}", ex.a.label(), ex.b.label()),
                got && got->monomial() == ex.product,
                fmt::format("got {}, expected {}", text(got), ex.product.label()));
    }
    return rep;
}

} // namespace etass
