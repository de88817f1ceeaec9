#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "sidonpds/cli.hpp"

using namespace sidonpds;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "sidonpds");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

// One data root with a q <= 250 cache, shared by the tests below.
class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        std::random_device rd;
        root_ = new fs::path(fs::temp_directory_path() / ("sidonpds_cli_" + std::to_string(rd())));
        const auto r = run({"--data-root", root_->string(), "build-cache", "250"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    static void TearDownTestSuite() {
        std::error_code ec;
        fs::remove_all(*root_, ec);
        delete root_;
    }
    static Result in_root(std::vector<std::string> args) {
        args.insert(args.begin(), {"--data-root", root_->string(), "--jobs", "2"});
        return run(args);
    }
    static fs::path* root_;
};

fs::path* CliTest::root_ = nullptr;

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"check", "0,1,3,11", "--bogus"}).code, 2);
    EXPECT_EQ(run({"build-cache", "1"}).code, 2);
    EXPECT_EQ(run({"build-cache", "ten"}).code, 2);
    EXPECT_EQ(run({"--jobs", "0", "sub-patterns"}).code, 2);
    EXPECT_EQ(run({"--budget-seconds", "-1", "sub-patterns"}).code, 2);
    EXPECT_EQ(run({"check", "0,1,2"}).code, 2);
    EXPECT_EQ(run({"check", "0,1,x"}).code, 2);
    EXPECT_EQ(run({"singer", "6"}).code, 2);
    EXPECT_EQ(run({"singer", "4", "--method", "magic"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ParseSet) {
    EXPECT_EQ(cli::parse_set("{0, 1, 3, 11}"), (SidonSet{0, 1, 3, 11}));
    EXPECT_EQ(cli::parse_set("11 3 1 0"), (SidonSet{0, 1, 3, 11}));
    EXPECT_THROW(cli::parse_set(""), cli::UsageError);
    EXPECT_THROW(cli::parse_set("1,1,2"), cli::UsageError);
}

TEST(Cli, MissingCacheNamesBuildCommand) {
    const auto empty = fs::temp_directory_path() / "sidonpds_cli_empty_root";
    fs::remove_all(empty);
    const auto r = run({"--data-root", empty.string(), "check", "0,1,3,11", "--q-max", "16"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("build-cache 16"), std::string::npos) << r.err;
    ::setenv("SIDONPDS_DATA_ROOT", empty.string().c_str(), 1);
    EXPECT_EQ(run({"triple-verify"}).code, 2);
    ::unsetenv("SIDONPDS_DATA_ROOT");
}

TEST(Cli, Singer) {
    const auto r = run({"singer", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"q\":3,\"v\":13,\"method\":\"trace-zero\",\"B\":[0,1,3,9]}\n");
    const auto rec = run({"singer", "4", "--method", "recurrence"});
    EXPECT_EQ(rec.code, 0);
    EXPECT_NE(rec.out.find("\"method\":\"recurrence\""), std::string::npos);
}

TEST(Cli, SubPatterns) {
    const auto r = run({"--check", "sub-patterns"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("{0, 1, 3, 7}"), std::string::npos);
}

TEST_F(CliTest, CheckControls) {
    const auto r = in_root({"check", "0,1,3,19", "--q-max", "64"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("EXTENDS at q=37"), std::string::npos) << r.out;
    const auto a = in_root({"check", "0,1,3,11", "--q-max", "250"});
    EXPECT_NE(a.out.find("NON-EXTENDING"), std::string::npos);
    EXPECT_NE(a.out.find("skip q=3"), std::string::npos);
}

TEST_F(CliTest, TripleVerifyQuick) {
    const auto r = in_root({"--check", "triple-verify", "--q-max", "32", "--q-hi", "7", "--no-hall"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(count(r.out, "verdict NON-EXTENDING"), 4u);
}

TEST_F(CliTest, EnumerateIsByteStable) {
    const auto first = in_root({"--check", "enumerate", "20", "4", "250"});
    EXPECT_EQ(first.code, 0) << first.err;
    EXPECT_NE(first.out.find("802"), std::string::npos);
    const auto path = *root_ / "size4_N20_qmax250_fast.jsonl";
    ASSERT_TRUE(fs::exists(path));
    std::ifstream in(path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(count(bytes, "\n"), 802u);

    const auto second = run({"--data-root", root_->string(), "--jobs", "1", "--check", "enumerate", "20", "4", "250"});
    EXPECT_EQ(second.out, first.out);
    std::ifstream again(path);
    EXPECT_EQ(std::string((std::istreambuf_iterator<char>(again)), {}), bytes);

    EXPECT_EQ(in_root({"--check", "enumerate", "14", "3", "250"}).code, 0);  // no reference counts: informational
}

TEST_F(CliTest, DensityTable) {
    const auto r = in_root({"--check", "density-table", "20", "22"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count(r.out, "\n"), 3u);
}

TEST_F(CliTest, ClosureAndFamily) {
    const auto c = in_root({"closure", "0,1,3,11", "5", "30", "--q-max", "64"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("violations 0"), std::string::npos);
    const auto f = in_root({"--check", "dilation-family", "--k-max", "2", "--q-max", "64"});
    EXPECT_EQ(f.code, 0) << f.out;
    EXPECT_EQ(count(f.out, "non-extending"), 8u);
}

TEST_F(CliTest, CheckModeReportsMismatch) {
    // the literal superset count under [0, 30] differs from the reference table, so --check must fail
    const auto r = in_root({"--check", "closure", "0,1,3,11", "5", "30", "--q-max", "64"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("check: FAIL"), std::string::npos);
}

TEST_F(CliTest, IndependentCheck) {
    const auto r = in_root({"--check", "independent-check", "--q-hi", "6"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(count(r.out, "result: NO extension"), 4u);
}
