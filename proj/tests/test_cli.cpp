#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ginv/fixtures.hpp"
#include "ginv/io.hpp"

namespace {

using nlohmann::json;

struct CliRun {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell; stderr is merged into the captured output
// unless `merge_stderr` is false (then it is discarded).
CliRun run(const std::string& args, bool merge_stderr = true, const std::string& env = "") {
    const std::string cmd =
        env + (env.empty() ? "" : " ") + GINV_CLI_PATH + std::string(" ") + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return std::string(GINV_FIXTURE_DIR) + "/" + name; }

ginv::Matrix matrix_from_json(const json& j) {
    ginv::Matrix m(j["rows"].get<int>(), j["cols"].get<int>());
    for (int i = 0; i < m.rows(); ++i) {
        for (int k = 0; k < m.cols(); ++k) {
            m(i, k) = {j["real"][i][k].get<double>(), j["imag"][i][k].get<double>()};
        }
    }
    return m;
}

double max_abs_diff(const ginv::Matrix& x, const ginv::Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

TEST(CliInverse, WgOfIndexTwoFixture) {
    const CliRun r = run("inverse wg " + fixture("index_two.mat"), false);
    EXPECT_EQ(r.code, 0);
    // Text output is itself a valid matrix file: the report lines are comments.
    const ginv::Matrix w = ginv::io::parse_matrix(r.out);
    EXPECT_LE(max_abs_diff(w, ginv::fixtures::index_two_inverses().wg), 1e-9);
    EXPECT_NE(r.out.find("AX^2=X"), std::string::npos);
}

TEST(CliInverse, EveryRouteSelectable) {
    for (const char* route : {"block-form", "core-ep-square", "power-core", "projector-mp"}) {
        const CliRun r = run("inverse wg " + fixture("index_two.mat") + " --route " + route, false);
        EXPECT_EQ(r.code, 0) << route;
        EXPECT_NE(r.out.find(route), std::string::npos);
    }
    EXPECT_EQ(run("inverse wg " + fixture("index_two.mat") + " --route newton").code, 3);
    EXPECT_EQ(run("inverse mp " + fixture("index_two.mat") + " --route block-form").code, 3);
}

TEST(CliInverse, GroupOfIndexTwoIsPreconditionError) {
    const CliRun r = run("inverse group " + fixture("index_two.mat"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("index = 2"), std::string::npos) << r.out;
}

TEST(CliInverse, MpOfZero) {
    const CliRun r = run("inverse mp " + fixture("zero.mat"), false);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(ginv::io::parse_matrix(r.out), ginv::zeros(3));
}

TEST(CliInverse, JsonReport) {
    const CliRun r = run("inverse dmp " + fixture("index_two.mat") + " --json", false);
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    for (const char* key : {"value", "route", "residuals", "index", "tolerances", "warnings"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["index"], 2);
    EXPECT_LE(max_abs_diff(matrix_from_json(j["value"]), ginv::fixtures::index_two_inverses().dmp), 1e-9);
    EXPECT_TRUE(j["residuals"]["XAX=X"].contains("relative"));
}

TEST(CliInverse, ParseAndFileErrors) {
    const CliRun bad = run("inverse mp " + fixture("malformed.mat"));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("line 3, column 3"), std::string::npos) << bad.out;
    EXPECT_EQ(run("inverse mp " + fixture("does-not-exist.mat")).code, 2);
}

TEST(CliInverse, ComplexEntriesAccepted) {
    const CliRun r = run("inverse mp " + fixture("complex.mat") + " --json", false);
    ASSERT_EQ(r.code, 0);
    const ginv::Matrix a = ginv::io::read_matrix_file(fixture("complex.mat"));
    const ginv::Matrix x = matrix_from_json(json::parse(r.out)["value"]);
    EXPECT_LE((a * x * a - a).norm(), 1e-12);
}

TEST(CliInverse, NumericalFailureExitCode) {
    // Rounding residuals of a complex matrix cannot meet a 1e-300 equality tolerance.
    const CliRun r = run("inverse wg " + fixture("complex.mat") + " --eq-rtol 1e-300");
    EXPECT_EQ(r.code, 4) << r.out;
}

TEST(CliOrder, CounterexampleVerdicts) {
    EXPECT_EQ(run("order wg " + fixture("wg_not_drazin_a.mat") + " " + fixture("wg_not_drazin_b.mat")).code, 0);
    EXPECT_EQ(run("order drazin " + fixture("wg_not_drazin_a.mat") + " " + fixture("wg_not_drazin_b.mat")).code, 1);
    EXPECT_EQ(run("order wg " + fixture("wg_antisym_b.mat") + " " + fixture("wg_antisym_a.mat")).code, 0);
    EXPECT_EQ(run("order cn " + fixture("drazin_not_wg_a.mat") + " " + fixture("drazin_not_wg_b.mat")).code, 0);
    EXPECT_EQ(run("order ce " + fixture("drazin_not_wg_a.mat") + " " + fixture("drazin_not_wg_b.mat")).code, 1);
    EXPECT_EQ(run("order wg " + fixture("wg_not_squared_a.mat") + " " + fixture("wg_not_squared_b.mat")).code, 0);
    EXPECT_EQ(run("order minus " + fixture("nilpotent.mat") + " " + fixture("nilpotent.mat")).code, 0);
}

TEST(CliOrder, JsonHasWitnessesAndParts) {
    const CliRun r = run("order ce " + fixture("drazin_not_wg_a.mat") + " " + fixture("drazin_not_wg_b.mat") + " --json", false);
    EXPECT_EQ(r.code, 1);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["order"], "ce");
    EXPECT_FALSE(j["holds"].get<bool>());
    EXPECT_EQ(j["parts"].size(), 2u);
    EXPECT_TRUE(j.contains("witnesses"));
    EXPECT_TRUE(j.contains("tolerances"));
}

TEST(CliOrder, ShapeMismatchIsPrecondition) {
    EXPECT_EQ(run("order wg " + fixture("index_two.mat") + " " + fixture("wg_antisym_a.mat")).code, 3);
}

TEST(CliDecompose, IndexAndCoreEp) {
    const CliRun idx = run("decompose index " + fixture("index_two.mat"));
    EXPECT_EQ(idx.code, 0);
    EXPECT_NE(idx.out.find("index = 2"), std::string::npos);

    const CliRun cep = run("decompose core-ep " + fixture("nilpotent.mat") + " --json", false);
    ASSERT_EQ(cep.code, 0);
    const json j = json::parse(cep.out);
    EXPECT_EQ(j["r"], 0);
    EXPECT_EQ(matrix_from_json(j["blocks"]["A1"]), ginv::zeros(3));
    EXPECT_TRUE(j["residuals"].contains("reconstruction"));
}

TEST(CliDecompose, TextShowsBlocksAndResidual) {
    for (const char* kind : {"core-ep", "core-nilpotent", "hs"}) {
        const CliRun r = run(std::string("decompose ") + kind + " " + fixture("index_two.mat"));
        EXPECT_EQ(r.code, 0) << kind;
        EXPECT_NE(r.out.find("reconstruction residual"), std::string::npos) << kind;
    }
}

TEST(CliSuite, ReferenceExamplesAndUnknown) {
    const CliRun r = run("suite paper-examples");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("5/5"), std::string::npos);
    EXPECT_EQ(run("suite no-such-suite").code, 3);
    const CliRun j = run("suite wg-uniqueness --count 10 --seed 4 --json", false);
    EXPECT_EQ(j.code, 0);
    const json report = json::parse(j.out);
    EXPECT_EQ(report["cases_run"], 10);
    EXPECT_EQ(report["cases_passed"], 10);
}

TEST(CliTolerances, EnvironmentThenFlags) {
    const std::string cmd = "decompose index " + fixture("index_two.mat") + " --json";
    const json env = json::parse(run(cmd, false, "GINV_EQ_RTOL=1e-7").out);
    EXPECT_DOUBLE_EQ(env["tolerances"]["eq_rtol"].get<double>(), 1e-7);
    const json flag = json::parse(run(cmd + " --eq-rtol 1e-6", false, "GINV_EQ_RTOL=1e-7").out);
    EXPECT_DOUBLE_EQ(flag["tolerances"]["eq_rtol"].get<double>(), 1e-6);
    const json def = json::parse(run(cmd, false).out);
    EXPECT_DOUBLE_EQ(def["tolerances"]["rank_rtol"].get<double>(), 1e-12);
    EXPECT_EQ(run(cmd, true, "GINV_RANK_RTOL=abc").code, 3);
    EXPECT_EQ(run(cmd + " --rank-rtol 2", true).code, 3);
}

TEST(CliUsage, BadArgumentsAreParseErrors) {
    EXPECT_EQ(run("inverse frobnicate " + fixture("zero.mat")).code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
