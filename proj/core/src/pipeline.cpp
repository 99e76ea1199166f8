#include "etass/pipeline.hpp"

#include "etass/brackets.hpp"
#include "etass/ext.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace etass {

namespace {

Report bockstein_suite(const Pipeline& p)
{
    Report rep = compare_bockstein_einfty(p.bockstein.einfty, closed_form_einfty(p.trunc));
    rep.merge(rho_inverted_check(p.bockstein.einfty));
    if (!p.bockstein.pages.empty())
        rep.merge(check_bockstein_pages(p.bockstein));
    else
        rep.add("bockstein.pages", fmt::format("mw<={}", p.trunc.mw_max), true,
                fmt::format("page-level checks skipped: pages not kept (kept up to mw {})", kBocksteinPageCheckLimit));
    return rep;
}

Report ext_suite(const Pipeline& p)
{
    Report rep = unique_detection_scan(closed_form_einfty(p.trunc));
    rep.merge(vanishing_scan(p.bockstein.einfty));
    rep.merge(vanishing_scan(p.adams.einfty));
    rep.merge(massey_index_sweep(p.trunc.mw_max));
    rep.merge(product_consistency(p.trunc.mw_max, 500));
    rep.merge(ext_finiteness_scan(p.adams.einfty));
    return rep;
}

Report adams_suite(const Pipeline& p)
{
    Report rep = compare_towers("adams.e3", p.adams.e3, closed_form_e3(p.trunc));
    rep.merge(compare_towers("adams.einfty", p.adams.einfty, closed_form_adams_einfty(p.trunc)));
    rep.merge(check_e3_products(p.adams));
    if (!p.adams.pages.empty()) {
        rep.merge(check_adams_pages(p.adams));
        rep.merge(alternative_target_scan(p.adams));
    }
    rep.merge(mod4_vanishing_scan(p.adams.einfty));
    rep.merge(exhaustiveness_scan(p.adams));
    return rep;
}

Report groups_suite(const Pipeline& p)
{
    Report rep = group_order_check(p.groups);
    rep.merge(ring_structure_report(p.groups));
    return rep;
}

Report brackets_suite(const Pipeline& p)
{
    Report rep = generator_table_report(p.adams.einfty, p.groups);
    if (p.trunc.mw_max >= 31)
        rep.merge(filtration_obstruction_check(p.adams.einfty));
    std::size_t generators = 0;
    for (const auto& g : p.groups)
        if (g.generator && !g.generator->is_unit()) {
            ++generators;
            rep.merge(verify_expr(decompose(*g.generator), p.adams.einfty, p.groups));
        }
    const auto worked = decompose(3, 10);
    rep.add("brackets.decompose", "P^40lambda3", worked.shallow() == "⟨2^8, λ7, P^8λ3⟩", worked.shallow());
    rep.add("brackets.all", fmt::format("{} generators", generators), rep.ok(), "every generator decomposes and verifies");
    return rep;
}

Report oracle_suite(const Pipeline& p)
{
    Report rep = dga_homology_oracle(6, 40);
    rep.merge(e2_oracle_check(p.adams.e3, 20, 0x0e2));
    return rep;
}

} // namespace

Pipeline Pipeline::run(int mw_max, bool keep_pages)
{
    Pipeline p;
    p.trunc.mw_max = mw_max;
    p.bockstein = run_bockstein(p.trunc, {keep_pages && mw_max <= kBocksteinPageCheckLimit, false});
    p.adams = run_adams(p.bockstein.einfty, {keep_pages});
    p.groups = extract_groups(p.adams.einfty, mw_max);
    return p;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"all", "bockstein", "ext", "adams", "groups", "brackets", "oracle"};
    return names;
}

bool is_suite(const std::string& name)
{
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

Report run_suite(const std::string& name, const Pipeline& p)
{
    if (name == "bockstein")
        return bockstein_suite(p);
    if (name == "ext")
        return ext_suite(p);
    if (name == "adams")
        return adams_suite(p);
    if (name == "groups")
        return groups_suite(p);
    if (name == "brackets")
        return brackets_suite(p);
    if (name == "oracle")
        return oracle_suite(p);
    if (name == "all") {
        Report rep;
        for (const auto& n : suite_names())
            if (n != "all")
                rep.merge(run_suite(n, p));
        return rep;
    }
    throw std::invalid_argument(fmt::format("unknown suite '{}'", name));
}

} // namespace etass
