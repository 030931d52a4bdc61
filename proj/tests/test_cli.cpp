#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " FERMIDIM_CLI_PATH " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Cli, RotatedCount) {
    const CliRun r = run("count rotated 8 8 --format json");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["M"], 8);
    EXPECT_EQ(j["N"], 8);
    EXPECT_EQ(j["value"], "38735278017380352");
}

TEST(Cli, StandardAndOracle) {
    EXPECT_EQ(json::parse(run("count standard 8 8").out)["value"], "311853312");
    const CliRun o = run("count oracle 3 3");
    ASSERT_EQ(o.code, 0);
    const json j = json::parse(o.out);
    EXPECT_EQ(j["formula"], "448");
    EXPECT_EQ(j["trace"], "448");
    EXPECT_EQ(j["enumeration"], "448");
}

TEST(Cli, Entropy) {
    const CliRun r = run("entropy");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["G"].get<double>(), 0.915965594, 1e-8);
    EXPECT_NEAR(j["S"].get<double>(), 0.583121808, 1e-8);
    EXPECT_NEAR(j["W"].get<double>(), 1.791622812, 1e-8);
}

TEST(Cli, VerifyInversion) {
    const CliRun r = run("verify inversion-cylinder 6 0.37");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LT(j["max_residual"].get<double>(), 1e-10);
}

TEST(Cli, VerifyAll) {
    const CliRun r = run("verify all 5 0.29 0.83");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, JordanExact) {
    const CliRun r = run("jordan 2 --exact");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    ASSERT_EQ(j["spectrum"].size(), 1u);
    EXPECT_EQ(j["spectrum"][0]["blocks"], json::array({2, 1, 1}));
    EXPECT_EQ(j["spectrum"][0]["eigenvalue"], json::array({0.0, 0.0}));
}

TEST(Cli, QSeries) {
    const json b = json::parse(run("qseries binomial 6 2").out);
    EXPECT_EQ(b["coefficients"], json::array({"1", "1", "2", "2", "3", "2", "2", "1", "1"}));
    const CliRun m = run("qseries mipf 4");
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(json::parse(m.out)["at_one"], "16");
    EXPECT_EQ(run("qseries continuum 8").code, 0);
}

TEST(Cli, SpectrumAndGrowth) {
    const CliRun s = run("spectrum 4 0.35");
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(json::parse(s.out)["matched"], 16);
    const CliRun g = run("growth 4 --format csv");
    ASSERT_EQ(g.code, 0);
    EXPECT_EQ(g.out.rfind("orientation,M,N,value,per_dimer,deviation\n", 0), 0u);
    EXPECT_NE(g.out.find("rotated,4,4,26752,"), std::string::npos);
}

TEST(Cli, FormatsAndConfig) {
    const CliRun csv = run("count rotated 2 2 --format csv");
    EXPECT_EQ(csv.out.rfind("M,N,value,method", 0), 0u);
    EXPECT_NE(csv.out.find("2,2,24,formula"), std::string::npos);
    EXPECT_NE(run("count rotated 2 2 --format text").out.find("value: 24"), std::string::npos);

    const std::string path = "fermidim_cli_test.cfg";
    std::ofstream(path) << "# defaults\nprecision_bits = 300\nformat = text\n";
    const CliRun c = run("--config " + path + " count rotated 3 3");
    EXPECT_NE(c.out.find("precision_bits: 300"), std::string::npos);
    const CliRun over = run("--config " + path + " count rotated 3 3 --format json --precision-bits 200");
    EXPECT_EQ(json::parse(over.out)["precision_bits"], 200);
    std::remove(path.c_str());

    const CliRun env = run("count rotated 3 3", "FERMIDIM_PRECISION_BITS=256");
    EXPECT_EQ(json::parse(env.out)["precision_bits"], 256);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("count sideways 2 2").code, 2);
    EXPECT_EQ(run("count rotated 2 2 --format xml").code, 2);
    EXPECT_EQ(run("count rotated 2 2", "FERMIDIM_PRECISION_BITS=20").code, 2);
    EXPECT_EQ(run("count standard 3 3").code, 2);
}
