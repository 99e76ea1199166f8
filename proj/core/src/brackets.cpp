#include "etass/brackets.hpp"

#include <bit>
#include <fmt/format.h>
#include <json.hpp>
#include <stdexcept>

namespace etass {

namespace {

GeneratorName lam(int n, std::uint32_t p = 0) { return {n, p}; }

BracketExpr bracket(BracketExpr a, BracketExpr b, BracketExpr c, GeneratorName value, BracketExpr::Step step)
{
    BracketExpr e;
    e.kind = BracketExpr::Kind::Bracket;
    e.step = step;
    e.value = value;
    e.entries = {std::move(a), std::move(b), std::move(c)};
    if (step == BracketExpr::Step::LambdaChain)
        e.indeterminacy = value;
    return e;
}

// P^p_exp lambda_n; p_exp is a multiple of 2^(n-1).
BracketExpr build(int n, std::uint32_t p_exp)
{
    if (p_exp == 0) {
        if (n == 2)
            return BracketExpr::lambda2();
        const auto tail = (std::uint32_t{1} << (n - 2)) - 2;
        return bracket(BracketExpr::two_power(3), BracketExpr::lambda2(), build(2, tail), lam(n),
                       BracketExpr::Step::LambdaChain);
    }
    // Strip the top bit 2^(m-2) of p_exp; m > n because p_exp >= 2^(n-1).
    const int m = std::bit_width(p_exp) - 1 + 2;
    const auto rest = p_exp - (std::uint32_t{1} << (m - 2));
    return bracket(BracketExpr::two_power(m + 1), build(m, 0), build(n, rest), lam(n, p_exp),
                   BracketExpr::Step::TopBit);
}

std::string entry_name(const BracketExpr& e, bool ascii)
{
    if (e.kind == BracketExpr::Kind::TwoPower)
        return fmt::format("2^{}", e.two_exp);
    return ascii ? e.value.label() : e.value.pretty();
}

const HomotopyGroup* group_at(const std::vector<HomotopyGroup>& groups, int mw)
{
    if (mw < 0 || static_cast<std::size_t>(mw) >= groups.size())
        return nullptr;
    return &groups[static_cast<std::size_t>(mw)];
}

void verify_node(const BracketExpr& e, const Page& einfty, const std::vector<HomotopyGroup>& groups, Report& rep)
{
    if (e.kind == BracketExpr::Kind::TwoPower)
        return;
    const std::string inst = fmt::format("{} = {}", e.value.label(), e.shallow_ascii());
    if (e.kind == BracketExpr::Kind::Lambda2) {
        rep.add("brackets.leaf", inst, e.value == lam(2), "leaf lambda2");
        return;
    }
    if (e.entries.size() != 3) {
        rep.add("brackets.shape", inst, false, fmt::format("{} entries", e.entries.size()));
        return;
    }
    for (const auto& sub : e.entries)
        verify_node(sub, einfty, groups, rep);

    const auto& first = e.entries[0];
    const auto& middle = e.entries[1];
    const int sum = e.entries[0].mw() + e.entries[1].mw() + e.entries[2].mw() + 1;
    rep.add("brackets.stem", inst, sum == e.value.mw(),
            fmt::format("{} + {} + {} + 1 = {}, generator stem {}", e.entries[0].mw(), e.entries[1].mw(),
                        e.entries[2].mw(), sum, e.value.mw()));

    const HomotopyGroup* mid = group_at(groups, middle.mw());
    const bool admissible = first.kind == BracketExpr::Kind::TwoPower && mid && !mid->infinite &&
                            mid->order_exponent > 0 && first.two_exp >= mid->order_exponent;
    rep.add("brackets.order", inst, admissible,
            mid ? fmt::format("2^{} against {} of order 2^{}", first.two_exp, middle.value.label(),
                              mid->order_exponent)
                : fmt::format("stem {} outside the computed groups", middle.mw()));

    const Monomial det = e.value.detector();
    const bool present = einfty.in_grid(det.bidegree()) && einfty.index_of(det).has_value();
    rep.add("brackets.detector", inst, present,
            fmt::format("{} at {} on {}", det.label(), to_string(det.bidegree()), einfty.label()));

    const bool ind_ok = e.step == BracketExpr::Step::LambdaChain ? e.indeterminacy == e.value : !e.indeterminacy;
    rep.add("brackets.indeterminacy", inst, ind_ok,
            e.indeterminacy ? fmt::format("2^3{}", e.indeterminacy->label()) : std::string("none"));
}

} // namespace

BracketExpr BracketExpr::two_power(int t)
{
    BracketExpr e;
    e.kind = Kind::TwoPower;
    e.two_exp = t;
    return e;
}

BracketExpr BracketExpr::lambda2()
{
    BracketExpr e;
    e.kind = Kind::Lambda2;
    e.value = lam(2);
    return e;
}

int BracketExpr::mw() const
{
    switch (kind) {
    case Kind::TwoPower:
        return 0;
    case Kind::Lambda2:
        return 3;
    case Kind::Bracket:
        break;
    }
    int s = 1;
    for (const auto& x : entries)
        s += x.mw();
    return s;
}

std::string BracketExpr::shallow() const
{
    if (is_leaf())
        return entry_name(*this, false);
    return fmt::format("⟨{}, {}, {}⟩", entry_name(entries[0], false), entry_name(entries[1], false),
                       entry_name(entries[2], false));
}

std::string BracketExpr::shallow_ascii() const
{
    if (is_leaf())
        return entry_name(*this, true);
    return fmt::format("<{}, {}, {}>", entry_name(entries[0], true), entry_name(entries[1], true),
                       entry_name(entries[2], true));
}

std::string BracketExpr::nested() const
{
    if (is_leaf())
        return entry_name(*this, false);
    return fmt::format("⟨{}, {}, {}⟩", entries[0].nested(), entries[1].nested(), entries[2].nested());
}

std::string BracketExpr::json() const
{
    auto to_json = [](const BracketExpr& e, const auto& self) -> nlohmann::ordered_json {
        nlohmann::ordered_json j;
        switch (e.kind) {
        case Kind::TwoPower:
            j["kind"] = "two_power";
            j["exponent"] = e.two_exp;
            return j;
        case Kind::Lambda2:
            j["kind"] = "lambda2";
            return j;
        case Kind::Bracket:
            break;
        }
        j["kind"] = "bracket";
        j["value"] = e.value.label();
        j["mw"] = e.mw();
        j["entries"] = nlohmann::ordered_json::array();
        for (const auto& x : e.entries)
            j["entries"].push_back(self(x, self));
        if (e.indeterminacy)
            j["indeterminacy"] = fmt::format("2^3{}", e.indeterminacy->label());
        return j;
    };
    return to_json(*this, to_json).dump();
}

BracketExpr decompose(int n, int k)
{
    if (n < 2 || k < 0 || n > kMaxVIndex)
        throw std::invalid_argument(fmt::format("decompose needs n >= 2, k >= 0 (n={}, k={})", n, k));
    return build(n, (std::uint32_t{1} << (n - 1)) * static_cast<std::uint32_t>(k));
}

BracketExpr decompose(const GeneratorName& g)
{
    if (g.is_unit())
        throw std::invalid_argument("the unit has no bracket decomposition");
    if (g.p_exp % (std::uint32_t{1} << (g.n - 1)) != 0)
        throw std::invalid_argument(fmt::format("{} is not a generator", g.label()));
    return build(g.n, g.p_exp);
}

Report verify_expr(const BracketExpr& e, const Page& einfty, const std::vector<HomotopyGroup>& groups)
{
    Report rep;
    verify_node(e, einfty, groups, rep);
    return rep;
}

bool derivable_bracket(const BracketTriple& b, const GeneratorName& target)
{
    if (target.is_unit() || b.middle.is_unit() || b.right.is_unit())
        return false;
    // lambda chain
    if (target.p_exp == 0 && target.n >= 3 && b.two_exp == 3 && b.middle == lam(2) &&
        b.right == lam(2, (std::uint32_t{1} << (target.n - 2)) - 2))
        return true;
    // <2^(m+1), lambda_m, P^e lambda_n> = P^(e + 2^(m-2)) lambda_n for any m > n
    const int m = b.middle.n;
    const int n = b.right.n;
    return b.middle.p_exp == 0 && m > n && b.two_exp == m + 1 && target.n == n &&
           b.right.p_exp % (std::uint32_t{1} << (n - 1)) == 0 &&
           target.p_exp == b.right.p_exp + (std::uint32_t{1} << (m - 2));
}

std::optional<BracketTriple> top_triple(const BracketExpr& e)
{
    if (e.kind != BracketExpr::Kind::Bracket || e.entries[0].kind != BracketExpr::Kind::TwoPower)
        return std::nullopt;
    return BracketTriple{e.entries[0].two_exp, e.entries[1].value, e.entries[2].value};
}

std::string triple_text(const BracketTriple& b)
{
    return fmt::format("⟨2^{}, {}, {}⟩", b.two_exp, b.middle.pretty(), b.right.pretty());
}

const std::vector<ReferenceRow>& reference_rows()
{
    static const std::vector<ReferenceRow> rows = [] {
        auto tri = [](int t, GeneratorName a, GeneratorName b) { return BracketTriple{t, a, b}; };
        std::vector<ReferenceRow> r;
        r.push_back({0, "1", GeneratorName::unit(), 0, std::nullopt, std::nullopt});
        r.push_back({3, "v2", lam(2), 3, std::nullopt, std::nullopt});
        r.push_back({7, "rho^3v3", lam(3), 4, tri(3, lam(2), lam(2)), lam(3)});
        r.push_back({11, "P^2v2", lam(2, 2), 3, tri(4, lam(3), lam(2)), std::nullopt});
        r.push_back({15, "rho^10v4", lam(4), 5, tri(3, lam(2), lam(2, 2)), lam(4)});
        r.push_back({19, "P^4v2", lam(2, 4), 3, tri(5, lam(4), lam(2)), std::nullopt});
        r.push_back({23, "rho^3P^4v3", lam(3, 4), 4, tri(5, lam(4), lam(3)), std::nullopt});
        r.push_back({27, "P^6v2", lam(2, 6), 3, tri(5, lam(4), lam(2, 2)), std::nullopt});
        r.push_back({31, "rho^25v5", lam(5), 6, tri(3, lam(2), lam(2, 6)), lam(5)});
        r.push_back({35, "P^8v2", lam(2, 8), 3, tri(6, lam(5), lam(2)), std::nullopt});
        r.push_back({39, "rho^3P^8v3", lam(3, 8), 4, tri(6, lam(5), lam(3)), std::nullopt});
        r.push_back({43, "P^10v2", lam(2, 10), 3, tri(6, lam(5), lam(2, 2)), std::nullopt});
        r.push_back({47, "rho^10P^8v4", lam(4, 8), 5, tri(6, lam(5), lam(4)), std::nullopt});
        r.push_back({51, "P^12v2", lam(2, 12), 3, tri(6, lam(5), lam(2, 4)), std::nullopt});
        r.push_back({55, "rho^3P^12v3", lam(3, 12), 4, tri(6, lam(5), lam(3, 4)), std::nullopt});
        r.push_back({59, "P^14v2", lam(2, 14), 3, tri(6, lam(5), lam(2, 6)), std::nullopt});
        r.push_back({63, "rho^56v6", lam(6), 7, tri(3, lam(2), lam(2, 14)), lam(6)});
        return r;
    }();
    return rows;
}

Report generator_table_report(const Page& einfty, const std::vector<HomotopyGroup>& groups)
{
    Report rep;
    std::size_t compared = 0;
    std::size_t skipped = 0;
    for (const auto& row : reference_rows()) {
        const HomotopyGroup* g = group_at(groups, row.mw);
        const std::string inst = fmt::format("mw={} {}", row.mw, row.generator.label());
        if (!g) {
            ++skipped;
            continue;
        }
        ++compared;
        const bool gen_ok = g->generator == row.generator && g->detector.label() == row.detector;
        rep.add("brackets.table.generator", inst, gen_ok,
                fmt::format("computed {} detected by {}, table {} detected by {}",
                            g->generator ? g->generator->label() : std::string("none"), g->detector.label(),
                            row.generator.label(), row.detector));
        const bool tor_ok = row.torsion == 0 ? g->infinite : (!g->infinite && g->order_exponent == row.torsion);
        rep.add("brackets.table.torsion", inst, tor_ok,
                fmt::format("computed {}, table {}", g->group_text(),
                            row.torsion ? fmt::format("Z/2^{}", row.torsion) : std::string("infinite")));

        if (!row.bracket) {
            const bool leaf = row.generator.is_unit() || decompose(row.generator).is_leaf();
            rep.add("brackets.table.bracket", inst, leaf, "no bracket: generator is a leaf");
            continue;
        }
        const BracketExpr canon = decompose(row.generator);
        const auto top = top_triple(canon);
        const bool reproduced = top && *top == *row.bracket;
        const bool alternative = !reproduced && derivable_bracket(*row.bracket, row.generator);
        rep.add("brackets.table.bracket", inst, reproduced || alternative,
                fmt::format("table {}; canonical {}: {}", triple_text(*row.bracket), canon.shallow(),
                            reproduced ? "reproduced" : alternative ? "alternative" : "not derivable"));
        const bool ind_ok = canon.indeterminacy == row.indeterminacy;
        rep.add("brackets.table.indeterminacy", inst, ind_ok,
                fmt::format("table {}, computed {}",
                            row.indeterminacy ? "2^3" + row.indeterminacy->label() : std::string("none"),
                            canon.indeterminacy ? "2^3" + canon.indeterminacy->label() : std::string("none")));
        rep.merge(verify_expr(canon, einfty, groups));
    }
    rep.add("brackets.table", fmt::format("{} rows", reference_rows().size()),
            rep.ok() && compared > 0,
            fmt::format("{} rows compared, {} beyond the computed stems", compared, skipped));
    return rep;
}

Report filtration_obstruction_check(const Page& einfty)
{
    Report rep;
    const Monomial l4 = lam(4).detector();
    const Monomial l5 = lam(5).detector();
    if (!einfty.index_of(l4) || !einfty.index_of(l5)) {
        rep.add("brackets.filtration", "<2^5, lambda4, lambda4>", false,
                fmt::format("{} or {} missing from {}", l4.label(), l5.label(), einfty.label()));
        return rep;
    }
    // 2^t is detected by rho^t, Chow degree t.
    const int two_c = 5;
    const int bracket_c = two_c + 2 * l4.bidegree().c;
    const int stem = 0 + 2 * l4.bidegree().mw + 1;
    const bool obstructed = bracket_c > l5.bidegree().c && stem == l5.bidegree().mw;
    rep.add("brackets.filtration", "<2^5, lambda4, lambda4>", obstructed,
            fmt::format("stem {} = stem of lambda5; Chow degree {} + 2*{} = {} > {} of {}", stem, two_c,
                        l4.bidegree().c, bracket_c, l5.bidegree().c, l5.label()));
    return rep;
}

std::string bracket_line(const HomotopyGroup& g)
{
    if (!g.generator)
        return fmt::format("mw={}: no generator", g.mw);
    if (g.generator->is_unit())
        return fmt::format("mw={} 1: no bracket", g.mw);
    const BracketExpr e = decompose(*g.generator);
    if (e.is_leaf())
        return fmt::format("mw={} {}: leaf", g.mw, g.generator->pretty());
    std::string line = fmt::format("mw={} {} = {}", g.mw, g.generator->pretty(), e.shallow());
    if (e.indeterminacy)
        line += fmt::format("  indeterminacy 2^3{}", e.indeterminacy->pretty());
    return line;
}

std::string bracket_lines(const std::vector<HomotopyGroup>& groups)
{
    std::string out;
    for (const auto& g : groups)
        if (!g.is_zero())
            out += bracket_line(g) + "\n";
    return out;
}

} // namespace etass
