#pragma once

// The full computation at one truncation, and the named verification suites
// run on it.

#include "etass/adams.hpp"
#include "etass/bockstein.hpp"
#include "etass/homotopy.hpp"
#include "etass/report.hpp"

#include <string>
#include <vector>

namespace etass {

/// Above this stem the kept Bockstein pages outgrow a few GB, so their
/// page-level checks are skipped.
inline constexpr int kBocksteinPageCheckLimit = 128;

struct Pipeline
{
    Truncation trunc;
    BocksteinResult bockstein;
    AdamsResult adams;
    std::vector<HomotopyGroup> groups;

    /// Bockstein, Adams and the homotopy groups. `keep_pages` keeps the
    /// intermediate pages (page checks, dumps, charts); Bockstein pages only
    /// up to kBocksteinPageCheckLimit.
    static Pipeline run(int mw_max, bool keep_pages = true);
};

/// "bockstein", "ext", "adams", "groups", "brackets", "oracle" and "all".
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite (or every suite for "all"). Throws std::invalid_argument on an unknown name.
Report run_suite(const std::string& name, const Pipeline& p);

} // namespace etass
