#include "nerve/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "nerve");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = nerve::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) { return std::string(NERVE_SPEC_DIR) + "/" + name; }

nerve::Json json_of(const Result& r) { return nerve::Json::parse(r.out); }

std::vector<std::size_t> betti_of(const nerve::Json& degrees)
{
    std::vector<std::size_t> b;
    for (const auto& d : degrees)
        b.push_back(d["betti"].get<std::size_t>());
    return b;
}

} // namespace

TEST(Cli, VerifySymmetricGroupOverF3)
{
    const auto r = run({"verify-theorem41", "--group", spec("z3_rtimes_z2.json"), "--coefficients", "fp:3", "--max-degree", "4",
                        "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json_of(r);
    EXPECT_EQ(j["verdict"], "PASS");
    for (const auto& p : j["pipelines"])
        EXPECT_EQ(betti_of(p["degrees"]), (std::vector<std::size_t>{1, 0, 0, 1, 1}));
    EXPECT_TRUE(j["hypotheses"]["order_h_invertible"].get<bool>());
    EXPECT_FALSE(j["pipelines"][0].contains("wall_seconds"));
}

TEST(Cli, TextReportCarriesHypotheses)
{
    const auto r = run({"verify-theorem41", "--group", spec("z3_rtimes_z2.json"), "--coefficients", "fp:2", "--max-degree", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("out-of-hypothesis"), std::string::npos);
    EXPECT_NE(r.out.find("verdict: PASS"), std::string::npos);
}

TEST(Cli, BettiOfTrivialGroup)
{
    const auto r = run({"betti-bg", "--group", spec("trivial.json"), "--coefficients", "z", "--max-degree", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(betti_of(json_of(r)["degrees"]), (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(Cli, IntegralTorsionInText)
{
    const auto r = run({"betti-bsemidirect", "--group", spec("z3_rtimes_z2.json"), "--coefficients", "z", "--max-degree", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Z/6"), std::string::npos) << r.out;
}

TEST(Cli, VerifyIdentities)
{
    const auto r = run({"verify-identities", "--group", spec("s3.json"), "--levels", "4", "--samples", "10000"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("verdict: PASS"), std::string::npos);
}

TEST(Cli, EquivariantWarnsOutOfHypothesis)
{
    const auto r = run({"betti-equivariant", "--group", spec("z3_rtimes_z2.json"), "--coefficients", "fp:2", "--max-degree", "3",
                        "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(json_of(r)["hypotheses"]["notes"].empty());
}

TEST(Cli, TorusModels)
{
    auto b = [](std::vector<std::string> extra) {
        extra.insert(extra.begin(), "betti-btorus");
        extra.push_back("--format");
        extra.push_back("json");
        const auto r = run(extra);
        EXPECT_EQ(r.code, 0) << r.err;
        return betti_of(json_of(r)["degrees"]);
    };
    EXPECT_EQ(b({"--rank", "1", "--max-degree", "6"}), (std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(b({"--rank", "1", "--model", "weinstein", "--max-degree", "4"}), (std::vector<std::size_t>{1, 0, 2, 0, 3}));
    EXPECT_EQ(b({"--model", "cartan-circle", "--max-degree", "4"}), (std::vector<std::size_t>{1, 0, 0, 0, 0}));
}

TEST(Cli, DumpAndSnfRoundTrip)
{
    const auto dir = std::filesystem::temp_directory_path() / "nerve_cli_dump";
    std::filesystem::remove_all(dir);
    auto r = run({"betti-bg", "--group", spec("z2.json"), "--coefficients", "z", "--max-degree", "2", "--dump-matrices", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_TRUE(std::filesystem::exists(dir / "d1.txt"));
    r = run({"snf", "--matrix", (dir / "d1.txt").string(), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    // H^2(Z/2; Z) = Z/2 is the torsion of d_1.
    const auto j = json_of(r);
    EXPECT_EQ(j["invariant_factors"].back(), "2");
    std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"no-such-command"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"betti-bg"}).code, 1);
    EXPECT_EQ(run({"betti-bg", "--group", spec("z2.json"), "--coefficients", "fp:4"}).code, 1);
    EXPECT_EQ(run({"betti-bg", "--group", spec("z2.json"), "--max-degree", "-1"}).code, 1);
    EXPECT_EQ(run({"betti-bg", "--group", spec("missing.json")}).code, 1);
    EXPECT_EQ(run({"betti-bg", "--group", spec("z2.json"), "--format", "xml"}).code, 1);
    // Capped run: the comparison cannot complete.
    EXPECT_EQ(run({"verify-theorem41", "--group", spec("z4_rtimes_z2.json"), "--resource-cap", "100"}).code, 1);
}

TEST(Cli, BadActionNamesTheElement)
{
    const auto r = run({"betti-bsemidirect", "--group", spec("bad_action.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("NotAutomorphism"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("h=1"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("action"), std::string::npos) << r.err;
}

TEST(Cli, ResourceCapFromEnvironment)
{
    ::setenv("NERVE_RESOURCE_CAP", "10", 1);
    const auto capped = run({"betti-bg", "--group", spec("z3.json"), "--max-degree", "4"});
    ::setenv("NERVE_RESOURCE_CAP", "nonsense", 1);
    const auto bad = run({"betti-bg", "--group", spec("z3.json"), "--max-degree", "1"});
    ::unsetenv("NERVE_RESOURCE_CAP");
    EXPECT_EQ(capped.code, 1);
    EXPECT_NE(capped.err.find("ResourceCap"), std::string::npos);
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(run({"betti-bg", "--group", spec("z3.json"), "--max-degree", "4", "--resource-cap", "10"}).code, 1);
}

TEST(Cli, DeterministicReports)
{
    const std::vector<std::string> args{"verify-theorem41", "--group", spec("z4_rtimes_z2.json"), "--coefficients", "z",
                                        "--max-degree", "3", "--format", "json"};
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}
