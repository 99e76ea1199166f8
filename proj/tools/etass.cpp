// Command-line driver. Exit codes: 0 success, 1 verification or computation
// failure, 2 bad arguments.

#include "etass/brackets.hpp"
#include "etass/charts.hpp"
#include "etass/errors.hpp"
#include "etass/pipeline.hpp"
#include "etass/serialize.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace etass;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadArgs = 2;

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error(fmt::format("cannot write {}", path));
}

void print_page_summary(const Page& p)
{
    std::size_t towers = 0;
    try {
        towers = compute_towers(p).size();
    } catch (const PageInconsistency&) {
    }
    fmt::print("{:<18} classes={:<7} towers={}\n", p.label(), p.reported_dim(), towers);
}

void print_towers(const Page& p)
{
    for (const auto& tw : compute_towers(p))
        fmt::print("  mw={:<4} c={}..{} length={} {}\n", tw.bottom.mw, tw.bottom.c, tw.bottom.c + tw.length - 1,
                   tw.length_text(), tw.generator.label());
}

int cmd_bockstein(int mw, const std::string& dump)
{
    Truncation t;
    t.mw_max = mw;
    const auto res = run_bockstein(t, {!dump.empty(), false});
    std::vector<const Page*> pages;
    for (const auto& p : res.pages) {
        print_page_summary(p);
        pages.push_back(&p);
    }
    print_page_summary(res.einfty);
    pages.push_back(&res.einfty);
    if (!dump.empty())
        for (const auto& path : dump_pages(dump, pages))
            fmt::print("wrote {}\n", path.string());
    return kOk;
}

int cmd_adams(int mw, const std::string& dump)
{
    Truncation t;
    t.mw_max = mw;
    const auto b = run_bockstein(t, {false, false});
    const auto res = run_adams(b.einfty, {true});
    std::vector<const Page*> pages;
    for (const auto& p : res.pages) {
        print_page_summary(p);
        pages.push_back(&p);
    }
    print_page_summary(res.einfty);
    print_towers(res.einfty);
    pages.push_back(&res.einfty);
    if (!dump.empty())
        for (const auto& path : dump_pages(dump, pages))
            fmt::print("wrote {}\n", path.string());
    return kOk;
}

int cmd_groups(int mw, const std::string& format)
{
    const auto p = Pipeline::run(mw, false);
    if (format == "table")
        std::cout << groups_table_text(p.groups);
    else if (format == "json")
        std::cout << groups_json(p.groups);
    else
        std::cout << groups_lines(p.groups);
    return kOk;
}

int cmd_brackets(int mw, bool all, int max_mw, bool json)
{
    const int window = all ? max_mw : std::max(mw, 3);
    const auto p = Pipeline::run(window, false);
    if (all) {
        if (!json) {
            std::cout << bracket_lines(p.groups);
            return kOk;
        }
        std::cout << "[";
        bool first = true;
        for (const auto& g : p.groups)
            if (g.generator && !g.generator->is_unit()) {
                std::cout << (first ? "" : ",") << decompose(*g.generator).json();
                first = false;
            }
        std::cout << "]\n";
        return kOk;
    }
    const auto& g = p.groups.at(static_cast<std::size_t>(mw));
    if (json && g.generator && !g.generator->is_unit()) {
        std::cout << decompose(*g.generator).json() << "\n";
        return kOk;
    }
    std::cout << bracket_line(g) << "\n";
    if (g.generator && !g.generator->is_unit()) {
        const auto e = decompose(*g.generator);
        if (!e.is_leaf())
            std::cout << "nested: " << e.nested() << "\n";
    }
    return kOk;
}

int cmd_chart(int mw, const std::string& which, const std::string& format, const std::string& out)
{
    Truncation t;
    t.mw_max = mw;
    const ChartFormat f = parse_chart_format(format);
    if (which == "e1") {
        write_output(out, render(build_e1(t), f));
        return kOk;
    }
    const auto b = run_bockstein(t, {false, false});
    if (which == "bockstein-einf") {
        write_output(out, render(b.einfty, f));
        return kOk;
    }
    const auto a = run_adams(b.einfty, {false});
    write_output(out, render(which == "e3" ? a.e3 : a.einfty, f));
    return kOk;
}

int cmd_verify(int mw, const std::string& suite, const std::string& report_path, bool verbose)
{
    const auto p = Pipeline::run(mw, true);
    const Report rep = run_suite(suite, p);
    if (verbose)
        for (const auto& e : rep.entries())
            fmt::print("{} {} [{}] {}\n", e.pass ? "ok  " : "FAIL", e.check, e.instance, e.detail);
    std::cout << rep.summary();
    if (!report_path.empty())
        write_output(report_path, rep.to_json());
    return rep.ok() ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"eta-inverted R-motivic spectral sequence calculator"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    int max_mw = 64;
    auto add_mw = [&](CLI::App* sub) {
        sub->add_option("--max-mw", max_mw, "Largest Milnor-Witt stem reported")->check(CLI::Range(1, 1024));
    };

    std::string dump_dir;
    auto* bock = app.add_subcommand("bockstein", "Run the rho-Bockstein spectral sequence");
    add_mw(bock);
    bock->add_option("--dump-pages", dump_dir, "Write every page as JSON into this directory");

    auto* adams = app.add_subcommand("adams", "Run the h1-inverted Adams spectral sequence");
    add_mw(adams);
    adams->add_option("--dump-pages", dump_dir, "Write every page as JSON into this directory");

    std::string groups_format = "lines";
    auto* groups = app.add_subcommand("groups", "Print the Milnor-Witt stem groups");
    add_mw(groups);
    groups->add_option("--format", groups_format, "lines, table or json")
        ->check(CLI::IsMember({"lines", "table", "json"}));

    int bracket_mw = -1;
    bool bracket_all = false;
    bool bracket_json = false;
    auto* brackets = app.add_subcommand("brackets", "Toda bracket decompositions of the generators");
    auto* mw_opt = brackets->add_option("--mw", bracket_mw, "Stem of the generator")->check(CLI::Range(0, 1024));
    auto* all_opt = brackets->add_flag("--all", bracket_all, "Every generator up to --max-mw");
    mw_opt->excludes(all_opt);
    add_mw(brackets);
    brackets->add_flag("--json", bracket_json, "Print bracket trees as JSON");

    std::string chart_page;
    std::string chart_format;
    std::string chart_out;
    auto* chart = app.add_subcommand("chart", "Render a page as a chart");
    add_mw(chart);
    chart->add_option("--page", chart_page, "Page to draw")
        ->required()
        ->check(CLI::IsMember({"e1", "e3", "einf", "bockstein-einf"}));
    chart->add_option("--format", chart_format, "Output format")
        ->required()
        ->check(CLI::IsMember({"svg", "ascii", "json"}));
    chart->add_option("--out", chart_out, "Output file (default: standard output)");

    std::string suite;
    std::string report_path;
    bool verbose = false;
    auto* verify = app.add_subcommand("verify", "Run verification suites; nonzero exit on any failure");
    verify->add_option("suite", suite, "Suite to run")->required()->check(CLI::IsMember(suite_names()));
    add_mw(verify);
    verify->add_option("--report", report_path, "Write the JSON report to this file");
    verify->add_flag("-v,--verbose", verbose, "Print every check, not only failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        if (*bock)
            return cmd_bockstein(max_mw, dump_dir);
        if (*adams)
            return cmd_adams(max_mw, dump_dir);
        if (*groups)
            return cmd_groups(max_mw, groups_format);
        if (*brackets) {
            if (!bracket_all && bracket_mw < 0) {
                std::cerr << "brackets: give --mw M or --all\n";
                return kBadArgs;
            }
            return cmd_brackets(bracket_mw, bracket_all, max_mw, bracket_json);
        }
        if (*chart)
            return cmd_chart(max_mw, chart_page, chart_format, chart_out);
        if (*verify)
            return cmd_verify(max_mw, suite, report_path, verbose);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kBadArgs;
}
