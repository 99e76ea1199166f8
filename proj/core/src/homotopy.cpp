#include "etass/homotopy.hpp"

#include "etass/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fmt/format.h>
#include <json.hpp>

namespace etass {

namespace {

std::string with_p(std::uint32_t p_exp, const std::string& tail)
{
    if (p_exp == 0)
        return tail;
    return (p_exp == 1 ? std::string("P") : fmt::format("P^{}", p_exp)) + tail;
}

// Reads P^(2^(n-1) k) lambda_n off its detector rho^(2^n - n - 2) P^(2^(n-1) k) v_n.
GeneratorName name_tower(const TorsionTower& tw)
{
    const Monomial& g = tw.generator;
    if (tw.bottom.mw == 0) {
        if (g != Monomial::one())
            throw PageInconsistency(fmt::format("stem 0 tower starts at {}, not 1", g.label()));
        return GeneratorName::unit();
    }
    const int n = g.has_v() ? g.min_v() : 0;
    const bool shape = n >= 2 && g.max_v() == n && g.v(n) == 1 &&
                       g.rho() == static_cast<std::uint32_t>((1 << n) - n - 2) &&
                       g.p() % (std::uint32_t{1} << (n - 1)) == 0;
    if (!shape)
        throw PageInconsistency(fmt::format("tower generator {} at {} is not a lambda detector", g.label(),
                                            to_string(tw.bottom)));
    return {n, g.p()};
}

} // namespace

std::string GeneratorName::label() const
{
    return is_unit() ? "1" : with_p(p_exp, fmt::format("lambda{}", n));
}

std::string GeneratorName::pretty() const
{
    return is_unit() ? "1" : with_p(p_exp, fmt::format("λ{}", n));
}

Monomial GeneratorName::detector() const
{
    Monomial m;
    if (is_unit())
        return m;
    m.set_rho(static_cast<std::uint32_t>((1 << n) - n - 2)).set_p(p_exp).set_v(n, 1);
    return m;
}

std::string HomotopyGroup::group_text() const
{
    if (infinite)
        return "Z_2[eta^{+-1}]";
    if (order_exponent == 0)
        return "0";
    return fmt::format("Z/2^{}", order_exponent);
}

std::vector<HomotopyGroup> extract_groups(const Page& einfty, int mw_max)
{
    std::vector<HomotopyGroup> groups(static_cast<std::size_t>(mw_max + 1));
    for (int mw = 0; mw <= mw_max; ++mw)
        groups[static_cast<std::size_t>(mw)].mw = mw;
    for (const auto& tw : compute_towers(einfty)) {
        if (tw.bottom.mw > mw_max)
            continue;
        auto& g = groups[static_cast<std::size_t>(tw.bottom.mw)];
        if (g.generator)
            throw MultipleTowers(fmt::format("stem {} carries towers on {} and {}", tw.bottom.mw,
                                             g.detector.label(), tw.generator.label()));
        if (tw.reaches_boundary && !tw.infinite)
            throw PageInconsistency(fmt::format("tower on {} is cut by the truncation; raise the Chow bound",
                                                tw.generator.label()));
        g.generator = name_tower(tw);
        g.detector = tw.generator;
        g.detector_bidegree = tw.bottom;
        g.infinite = tw.infinite;
        g.order_exponent = tw.infinite ? 0 : tw.length;
    }
    return groups;
}

int imj_order(int mw)
{
    if (mw < 3 || mw % 4 != 3)
        throw WrongStem(fmt::format("stem {} is not 3 mod 4", mw));
    return std::countr_zero(static_cast<unsigned>(mw + 1)) + 1;
}

Report group_order_check(const std::vector<HomotopyGroup>& groups)
{
    Report rep;
    std::size_t bad = 0;
    auto fail = [&](int mw, std::string detail) {
        ++bad;
        rep.add("homotopy.orders", fmt::format("mw={}", mw), false, std::move(detail));
    };
    for (const auto& g : groups) {
        if (g.mw == 0) {
            if (!g.infinite || !g.generator || !g.generator->is_unit())
                fail(0, fmt::format("expected Z_2[eta^(+-1)] on 1, got {}", g.group_text()));
        } else if (g.mw % 4 == 3) {
            const int want = imj_order(g.mw);
            if (g.infinite || g.order_exponent != want)
                fail(g.mw, fmt::format("expected Z/2^{}, got {}", want, g.group_text()));
            else if (!g.generator || g.generator->mw() != g.mw)
                fail(g.mw, "generator name does not sit in this stem");
        } else if (!g.is_zero()) {
            fail(g.mw, fmt::format("expected 0, got {}", g.group_text()));
        }
    }
    const int top = groups.empty() ? 0 : groups.back().mw;
    rep.add("homotopy.orders", fmt::format("0<=mw<={}", top), bad == 0,
            fmt::format("{} stems compared with 2^(v2(mw+1)+1), {} mismatches", groups.size(), bad));
    return rep;
}

std::vector<ProductEntry> zero_product_table(const std::vector<HomotopyGroup>& groups)
{
    std::vector<const HomotopyGroup*> gens;
    for (const auto& g : groups)
        if (g.generator && !g.generator->is_unit())
            gens.push_back(&g);
    std::vector<ProductEntry> out;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            ProductEntry e{*gens[i]->generator, *gens[j]->generator, gens[i]->mw + gens[j]->mw, true};
            if (static_cast<std::size_t>(e.target_mw) < groups.size())
                e.zero = groups[static_cast<std::size_t>(e.target_mw)].is_zero();
            else
                e.zero = e.target_mw % 4 == 2;
            out.push_back(e);
        }
    return out;
}

Report ring_structure_report(const std::vector<HomotopyGroup>& groups)
{
    Report rep;
    const auto table = zero_product_table(groups);
    std::size_t in_window = 0;
    std::size_t bad = 0;
    for (const auto& e : table) {
        if (static_cast<std::size_t>(e.target_mw) < groups.size())
            ++in_window;
        if (e.target_mw % 4 != 2 || !e.zero) {
            ++bad;
            rep.add("homotopy.products", fmt::format("{} * {}", e.a.label(), e.b.label()), false,
                    fmt::format("lands at mw {}", e.target_mw));
        }
    }
    rep.add("homotopy.products", fmt::format("{} generator pairs", table.size()), bad == 0,
            fmt::format("every product lands at mw = 2 mod 4; {} targets inside the window, all zero", in_window));
    return rep;
}

std::string groups_table_text(const std::vector<HomotopyGroup>& groups)
{
    std::vector<std::array<std::string, 4>> rows{{"mw", "E_inf detector", "generator", "torsion"}};
    for (const auto& g : groups) {
        if (g.is_zero())
            continue;
        rows.push_back({std::to_string(g.mw), g.detector.pretty(), g.generator ? g.generator->pretty() : "?",
                        g.infinite ? "inf" : fmt::format("2^{}", g.order_exponent)});
    }
    std::array<std::size_t, 4> width{};
    // Column widths count code points so the Unicode labels line up.
    auto cps = [](const std::string& s) {
        return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) {
            return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
        }));
    };
    for (const auto& r : rows)
        for (std::size_t i = 0; i < 4; ++i)
            width[i] = std::max(width[i], cps(r[i]));
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < 4; ++i) {
            line += r[i];
            if (i + 1 < 4)
                line += std::string(width[i] - cps(r[i]) + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

std::string groups_lines(const std::vector<HomotopyGroup>& groups)
{
    std::string out;
    for (const auto& g : groups)
        if (!g.is_zero())
            out += fmt::format("mw={} {} gen={}\n", g.mw, g.group_text(), g.generator ? g.generator->label() : "?");
    return out;
}

std::string groups_json(const std::vector<HomotopyGroup>& groups)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& g : groups) {
        nlohmann::ordered_json j;
        j["mw"] = g.mw;
        j["group"] = g.group_text();
        if (g.infinite)
            j["infinite"] = true;
        else
            j["order_exponent"] = g.order_exponent;
        if (g.generator) {
            j["generator"] = g.generator->label();
            j["detector"] = g.detector.label();
            j["detector_mw"] = g.detector_bidegree.mw;
            j["detector_c"] = g.detector_bidegree.c;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

} // namespace etass
