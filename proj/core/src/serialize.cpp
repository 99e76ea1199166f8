#include "etass/serialize.hpp"

#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace etass {

std::string page_to_json(const Page& page)
{
    using json = nlohmann::ordered_json;
    const auto& t = page.truncation();
    json doc;
    if (page.r() == Page::kInfinity)
        doc["page"] = "inf";
    else
        doc["page"] = page.r();
    doc["kind"] = to_string(page.kind());
    doc["max_mw"] = t.mw_max;

    json classes = json::array();
    json diffs = json::array();
    const Bidegree shift = page.diff_shift();
    page.for_each_cell(
        [&](Bidegree d, const Cell& cell) {
            if (!t.reported(d))
                return;
            for (std::size_t i = 0; i < cell.basis.size(); ++i) {
                const Monomial& m = cell.basis[i];
                json v = json::object();
                for (int n = 2; n <= kMaxVIndex; ++n)
                    if (m.v(n))
                        v[fmt::format("v{}", n)] = m.v(n);
                classes.push_back({{"mw", d.mw},
                                   {"c", d.c},
                                   {"label", m.label()},
                                   {"rho_exp", m.rho()},
                                   {"p_exp", m.p()},
                                   {"v_exps", std::move(v)}});
                if (cell.diff.empty() || cell.diff[i].empty())
                    continue;
                const Cell& target = page.cell(d + shift);
                json labels = json::array();
                for (auto j : cell.diff[i])
                    labels.push_back(target.basis[j].label());
                diffs.push_back({{"r", page.r()}, {"source_label", m.label()}, {"target_labels", std::move(labels)}});
            }
        },
        t.mw_max);
    doc["classes"] = std::move(classes);
    doc["differentials"] = std::move(diffs);

    json towers = json::array();
    for (const auto& tw : compute_towers(page)) {
        json j;
        j["generator_label"] = tw.generator.label();
        if (tw.infinite) {
            j["infinite"] = true;
        } else {
            j["length"] = tw.length;
            if (tw.reaches_boundary)
                j["truncated"] = true;
        }
        towers.push_back(std::move(j));
    }
    doc["towers"] = std::move(towers);
    return doc.dump(1) + "\n";
}

std::string page_file_name(const Page& page)
{
    const std::string r = page.r() == Page::kInfinity ? "inf" : std::to_string(page.r());
    return fmt::format("{}-E_{}.json", to_string(page.kind()), r);
}

std::vector<std::filesystem::path> dump_pages(const std::filesystem::path& dir, const std::vector<const Page*>& pages)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const Page* p : pages) {
        const auto path = dir / page_file_name(*p);
        std::ofstream out(path, std::ios::binary);
        out << page_to_json(*p);
        if (!out)
            throw std::runtime_error(fmt::format("cannot write {}", path.string()));
        written.push_back(path);
    }
    return written;
}

} // namespace etass
