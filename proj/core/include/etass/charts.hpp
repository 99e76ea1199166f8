#pragma once

// Charts in the usual convention: mw horizontal, c vertical, a dot per class,
// vertical segments for rho-multiplication, d_r drawn from (mw, c) to
// (mw - 1, c + r - 1).

#include "etass/page.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etass {

enum class ChartFormat { Svg, Ascii, Json };

/// "svg", "ascii" or "json"; throws UnsupportedFormat otherwise.
ChartFormat parse_chart_format(std::string_view name);

std::string render(const Page& page, ChartFormat format);
std::string render(const Page& page, std::string_view format);

/// Dots and towers read back from a JSON chart.
struct ChartContents
{
    struct Tower
    {
        std::string label;
        /// Bottom of the tower, the bidegree of its generator.
        int mw = 0;
        int c = 0;
        int length = 0;
        bool infinite = false;
        bool truncated = false;
    };
    /// Number of classes at each (mw, c).
    std::map<std::pair<int, int>, int> dots;
    std::vector<Tower> towers;
    struct Segment
    {
        int r = 0;
        std::pair<int, int> source;
        std::pair<int, int> target;
        friend auto operator<=>(const Segment&, const Segment&) = default;
    };
    /// One segment per (source, target term) of each differential.
    std::vector<Segment> differentials;
    std::string page;
    std::string kind;
    int max_mw = 0;
};
ChartContents read_chart_json(std::string_view json);

} // namespace etass
