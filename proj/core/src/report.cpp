#include "etass/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace etass {

void Report::add(std::string check, std::string instance, bool pass, std::string detail)
{
    entries_.push_back({std::move(check), std::move(instance), pass, std::move(detail)});
}

void Report::merge(const Report& other)
{
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t Report::failures() const
{
    std::size_t n = 0;
    for (const auto& e : entries_)
        n += e.pass ? 0 : 1;
    return n;
}

std::vector<ReportEntry> Report::filter(const std::string& check) const
{
    std::vector<ReportEntry> out;
    for (const auto& e : entries_)
        if (e.check == check)
            out.push_back(e);
    return out;
}

std::string Report::to_json() const
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries_)
        arr.push_back({{"check", e.check}, {"instance", e.instance}, {"pass", e.pass}, {"detail", e.detail}});
    return arr.dump(2);
}

std::string Report::summary() const
{
    std::string s;
    for (const auto& e : entries_)
        if (!e.pass)
            s += fmt::format("FAIL {} [{}]: {}\n", e.check, e.instance, e.detail);
    s += fmt::format("{} checks, {} failed\n", entries_.size(), failures());
    return s;
}

} // namespace etass
