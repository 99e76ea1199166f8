#pragma once

// Page dumps:
//   {"page": r | "inf", "kind": "bockstein" | "adams", "max_mw": N,
//    "classes": [{"mw", "c", "label", "rho_exp", "p_exp", "v_exps": {"vN": e}}],
//    "differentials": [{"r", "source_label", "target_labels"}],
//    "towers": [{"generator_label", "length" | "infinite"}]}
// Only the reported window (mw <= max_mw, c <= c_max) is written. A tower cut
// by the Chow bound outside stem 0 carries "truncated": true next to its length.

#include "etass/page.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace etass {

/// Deterministic: the same page always serializes to the same bytes.
std::string page_to_json(const Page& page);

/// "bockstein-E_3.json", "adams-E_inf.json", ...
std::string page_file_name(const Page& page);

/// Writes every page into `dir` (created if needed); returns the paths written.
std::vector<std::filesystem::path> dump_pages(const std::filesystem::path& dir, const std::vector<const Page*>& pages);

} // namespace etass
