#include "etass/charts.hpp"

#include "etass/errors.hpp"
#include "etass/serialize.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <json.hpp>

namespace etass {

namespace {

// Horizontal offset of class i among n classes sharing a bidegree.
double spread(std::size_t i, std::size_t n)
{
    return n <= 1 ? 0.0 : -0.2 + 0.4 * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string render_svg(const Page& page)
{
    const auto& t = page.truncation();
    const int w = t.mw_max + 2;
    const int h = t.c_max() + 2;
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1 -1 {} {}\" "
                     "width=\"{}\" height=\"{}\">\n",
                     w + 1, h + 1, (w + 1) * 12, (h + 1) * 12);
    s += fmt::format("<title>{}</title>\n", page.label());
    // One unit per degree, origin bottom-left, y upward.
    s += fmt::format("<g transform=\"translate(0 {}) scale(1 -1)\">\n", h - 1);
    s += "<g stroke=\"#ddd\" stroke-width=\"0.03\">\n";
    for (int x = 0; x <= t.mw_max; x += 4)
        s += fmt::format("<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"{}\"/>\n", x, x, t.c_max());
    for (int y = 0; y <= t.c_max(); y += 4)
        s += fmt::format("<line x1=\"0\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", y, t.mw_max, y);
    s += "</g>\n";

    std::string dots;
    std::string rho;
    std::string diffs;
    const Bidegree shift = page.diff_shift();
    page.for_each_cell(
        [&](Bidegree d, const Cell& cell) {
            if (!t.reported(d))
                return;
            const std::size_t n = cell.size();
            for (std::size_t i = 0; i < n; ++i) {
                const double x = d.mw + spread(i, n);
                dots += fmt::format("<circle cx=\"{:.2f}\" cy=\"{}\" r=\"0.15\"><title>{}</title></circle>\n", x,
                                    d.c, xml_escape(cell.basis[i].label()));
                if (i < cell.rho.size()) {
                    const Bidegree up = d + Bidegree{0, 1};
                    for (auto j : cell.rho[i])
                        if (t.reported(up))
                            rho += fmt::format("<line x1=\"{:.2f}\" y1=\"{}\" x2=\"{:.2f}\" y2=\"{}\"/>\n", x, d.c,
                                               up.mw + spread(j, page.dim(up)), up.c);
                }
                if (i < cell.diff.size()) {
                    const Bidegree tgt = d + shift;
                    for (auto j : cell.diff[i])
                        diffs += fmt::format("<line x1=\"{:.2f}\" y1=\"{}\" x2=\"{:.2f}\" y2=\"{}\"/>\n", x, d.c,
                                             tgt.mw + spread(j, page.dim(tgt)), tgt.c);
                }
            }
        },
        t.mw_max);
    s += "<g stroke=\"#000\" stroke-width=\"0.06\">\n" + rho + "</g>\n";
    s += "<g stroke=\"#c00\" stroke-width=\"0.05\">\n" + diffs + "</g>\n";
    s += "<g fill=\"#000\">\n" + dots + "</g>\n";
    s += "<g font-size=\"0.6\" fill=\"#036\">\n";
    for (const auto& tw : compute_towers(page)) {
        if (!t.reported(tw.bottom))
            continue;
        s += fmt::format("<text transform=\"translate({:.2f} {:.2f}) scale(1 -1)\">{}</text>\n", tw.bottom.mw + 0.25,
                         tw.bottom.c - 0.2, xml_escape(tw.generator.pretty()));
    }
    s += "</g>\n</g>\n</svg>\n";
    return s;
}

std::string render_ascii(const Page& page)
{
    const auto& t = page.truncation();
    std::string s = fmt::format("{}  (mw 0..{} across, c 0..{} up; o = one class, digit = several)\n", page.label(),
                                t.mw_max, t.c_max());
    for (int c = t.c_max(); c >= 0; --c) {
        std::string row = fmt::format("{:>4} ", c);
        for (int mw = 0; mw <= t.mw_max; ++mw) {
            const std::size_t n = page.dim({mw, c});
            row += n == 0 ? '.' : n == 1 ? 'o' : n <= 9 ? static_cast<char>('0' + n) : '*';
        }
        while (!row.empty() && row.back() == ' ')
            row.pop_back();
        s += row + "\n";
    }
    std::string axis(5, ' ');
    for (int mw = 0; mw <= t.mw_max; ++mw)
        axis += mw % 4 == 0 ? '|' : ' ';
    s += axis + "\n";
    std::string ticks(5, ' ');
    for (int mw = 0; mw <= t.mw_max; mw += 8) {
        const std::string num = std::to_string(mw);
        ticks.resize(5 + static_cast<std::size_t>(mw), ' ');
        ticks += num;
    }
    s += ticks + "\n";
    for (const auto& tw : compute_towers(page))
        s += fmt::format("tower mw={} c={}..{} length={} {}\n", tw.bottom.mw, tw.bottom.c,
                         tw.bottom.c + tw.length - 1, tw.length_text(), tw.generator.pretty());
    const Bidegree shift = page.diff_shift();
    page.for_each_cell(
        [&](Bidegree d, const Cell& cell) {
            if (!t.reported(d))
                return;
            for (std::size_t i = 0; i < cell.diff.size(); ++i) {
                if (cell.diff[i].empty())
                    continue;
                const Cell& tgt = page.cell(d + shift);
                std::string rhs;
                for (auto j : cell.diff[i])
                    rhs += (rhs.empty() ? "" : " + ") + tgt.basis[j].pretty();
                s += fmt::format("d{} {} -> {}\n", page.r(), cell.basis[i].pretty(), rhs);
            }
        },
        t.mw_max);
    return s;
}

} // namespace

ChartFormat parse_chart_format(std::string_view name)
{
    if (name == "svg")
        return ChartFormat::Svg;
    if (name == "ascii")
        return ChartFormat::Ascii;
    if (name == "json")
        return ChartFormat::Json;
    throw UnsupportedFormat(fmt::format("unsupported chart format '{}'", name));
}

std::string render(const Page& page, ChartFormat format)
{
    switch (format) {
    case ChartFormat::Svg:
        return render_svg(page);
    case ChartFormat::Ascii:
        return render_ascii(page);
    case ChartFormat::Json:
        return page_to_json(page);
    }
    throw UnsupportedFormat("unknown chart format");
}

std::string render(const Page& page, std::string_view format) { return render(page, parse_chart_format(format)); }

ChartContents read_chart_json(std::string_view text)
{
    const auto doc = nlohmann::json::parse(text);
    ChartContents out;
    out.page = doc.at("page").is_string() ? doc.at("page").get<std::string>() : std::to_string(doc.at("page").get<int>());
    out.kind = doc.at("kind").get<std::string>();
    out.max_mw = doc.at("max_mw").get<int>();
    for (const auto& c : doc.at("classes"))
        ++out.dots[{c.at("mw").get<int>(), c.at("c").get<int>()}];
    for (const auto& tw : doc.at("towers")) {
        ChartContents::Tower t;
        t.label = tw.at("generator_label").get<std::string>();
        const Bidegree bottom = Monomial::parse(t.label).bidegree();
        t.mw = bottom.mw;
        t.c = bottom.c;
        t.infinite = tw.value("infinite", false);
        t.length = tw.value("length", 0);
        t.truncated = tw.value("truncated", false);
        out.towers.push_back(std::move(t));
    }
    for (const auto& d : doc.at("differentials")) {
        const Bidegree src = Monomial::parse(d.at("source_label").get<std::string>()).bidegree();
        for (const auto& tl : d.at("target_labels")) {
            const Bidegree tgt = Monomial::parse(tl.get<std::string>()).bidegree();
            out.differentials.push_back({d.at("r").get<int>(), {src.mw, src.c}, {tgt.mw, tgt.c}});
        }
    }
    return out;
}

} // namespace etass
