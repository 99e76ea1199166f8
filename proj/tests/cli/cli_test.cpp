#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run
{
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded; returns the exit code and stdout.
Run etass(const std::string& args)
{
    const std::string cmd = std::string("\"") + ETASS_CLI_PATH + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("etass_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Cli, GroupsLines)
{
    const auto r = etass("groups --max-mw 64");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 17);
    EXPECT_EQ(r.out.rfind("mw=0 Z_2[eta^{+-1}] gen=1\nmw=3 Z/2^3 gen=lambda2\n", 0), 0U);
    EXPECT_NE(r.out.find("mw=63 Z/2^7 gen=lambda6\n"), std::string::npos);
}

TEST(Cli, GroupsJsonAndTable)
{
    const auto j = etass("groups --max-mw 64 --format json");
    ASSERT_EQ(j.code, 0);
    const auto doc = nlohmann::json::parse(j.out);
    ASSERT_EQ(doc.size(), 65U);
    EXPECT_EQ(doc[47]["group"], "Z/2^5");
    const auto t = etass("groups --max-mw 16 --format table");
    ASSERT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("ρ¹⁰v₄"), std::string::npos);
    EXPECT_EQ(etass("groups --format xml").code, 2);
}

TEST(Cli, BracketsForOneStem)
{
    const auto r = etass("brackets --mw 47");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("mw=47 P^8λ4 = ⟨2^6, λ5, λ4⟩"), std::string::npos);
    const auto big = etass("brackets --mw 167 --max-mw 200");
    ASSERT_EQ(big.code, 0);
    EXPECT_NE(big.out.find("P^40λ3 = ⟨2^8, λ7, P^8λ3⟩"), std::string::npos);
}

TEST(Cli, BracketsArguments)
{
    EXPECT_EQ(etass("brackets").code, 2);
    EXPECT_EQ(etass("brackets --mw 47 --all").code, 2);
    const auto all = etass("brackets --all --max-mw 64");
    ASSERT_EQ(all.code, 0);
    EXPECT_NE(all.out.find("mw=63"), std::string::npos);
    const auto js = etass("brackets --mw 31 --json");
    ASSERT_EQ(js.code, 0);
    EXPECT_TRUE(nlohmann::json::accept(js.out));
}

TEST(Cli, ChartFormats)
{
    const auto svg = etass("chart --page e3 --format svg --max-mw 32");
    ASSERT_EQ(svg.code, 0);
    EXPECT_NE(svg.out.find("<svg"), std::string::npos);
    const auto js = etass("chart --page einf --format json --max-mw 32");
    ASSERT_EQ(js.code, 0);
    EXPECT_EQ(nlohmann::json::parse(js.out)["page"], "inf");
    const auto dir = scratch("chart");
    std::filesystem::create_directories(dir);
    ASSERT_EQ(etass("chart --page bockstein-einf --format ascii --max-mw 16 --out " + (dir / "c.txt").string()).code, 0);
    EXPECT_FALSE(slurp(dir / "c.txt").empty());
    EXPECT_EQ(etass("chart --page einf --format png").code, 2);
    EXPECT_EQ(etass("chart --page e9 --format svg").code, 2);
    std::filesystem::remove_all(dir);
}

TEST(Cli, DumpPagesIsDeterministic)
{
    const auto a = scratch("dump_a");
    const auto b = scratch("dump_b");
    ASSERT_EQ(etass("adams --max-mw 40 --dump-pages " + a.string()).code, 0);
    ASSERT_EQ(etass("adams --max-mw 40 --dump-pages " + b.string()).code, 0);
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        ++files;
        EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    }
    EXPECT_GE(files, 3U);
    EXPECT_TRUE(std::filesystem::exists(a / "adams-E_inf.json"));
    ASSERT_EQ(etass("bockstein --max-mw 20 --dump-pages " + a.string()).code, 0);
    EXPECT_TRUE(std::filesystem::exists(a / "bockstein-E_7.json"));
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST(Cli, VerifyAllAt64)
{
    const auto dir = scratch("verify");
    std::filesystem::create_directories(dir);
    const auto r = etass("verify all --max-mw 64 --report " + (dir / "report.json").string());
    EXPECT_EQ(r.code, 0) << r.out;
    const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_FALSE(doc.empty());
    std::filesystem::remove_all(dir);
}

TEST(Cli, BadArguments)
{
    EXPECT_EQ(etass("verify nonsense").code, 2);
    EXPECT_EQ(etass("verify").code, 2);
    EXPECT_EQ(etass("groups --max-mw 0").code, 2);
    EXPECT_EQ(etass("groups --max-mw abc").code, 2);
    EXPECT_EQ(etass("frobnicate").code, 2);
    EXPECT_EQ(etass("").code, 2);
    EXPECT_EQ(etass("--help").code, 0);
}
