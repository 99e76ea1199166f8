#pragma once

// Verification reports: a flat list of {check, instance, pass, detail}.

#include <string>
#include <vector>

namespace etass {

struct ReportEntry
{
    std::string check;
    std::string instance;
    bool pass = true;
    std::string detail;
};

class Report
{
public:
    void add(std::string check, std::string instance, bool pass, std::string detail = {});
    void merge(const Report& other);

    bool ok() const { return failures() == 0; }
    std::size_t failures() const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<ReportEntry>& entries() const { return entries_; }
    /// Entries whose check name equals `check`.
    std::vector<ReportEntry> filter(const std::string& check) const;

    std::string to_json() const;
    /// One line per failure plus a count summary.
    std::string summary() const;

private:
    std::vector<ReportEntry> entries_;
};

} // namespace etass
