// End-to-end tests of the CLI binary: output format, JSON schema, and the
// exit-code contract (0 ok, 1 counterexample/verification failure, 2 usage).

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef CUBESUM_CLI_BIN
#error "CUBESUM_CLI_BIN must point at the built cubesum binary"
#endif

namespace {

using json = nlohmann::ordered_json;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CUBESUM_CLI_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

}  // namespace

TEST(CliReps, PositiveText) {
    const auto r = run_cli("reps 91 --positive");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("N = 91 = 7 * 13"), std::string::npos);
    EXPECT_NE(r.out.find("positive representations (4):"), std::string::npos);
    EXPECT_NE(r.out.find("(5, 6)"), std::string::npos);
    EXPECT_NE(r.out.find("count by formula: 4"), std::string::npos);
    EXPECT_NE(r.out.find("agreement: yes"), std::string::npos);
}

TEST(CliReps, AllModeEmptySet) {
    const auto r = run_cli("reps 2 --all");
    EXPECT_EQ(r.exit_code, 0);  // emptiness is a valid answer
    EXPECT_NE(r.out.find("all representations (0):"), std::string::npos);
    EXPECT_NE(r.out.find("count by formula: 0"), std::string::npos);
}

TEST(CliReps, JsonPayload) {
    const auto r = run_cli("--format json reps 343 --positive");
    ASSERT_EQ(r.exit_code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["schema"], "cubesum/1");
    EXPECT_EQ(j["command"], "reps");
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["inputs"]["N"], "343");
    ASSERT_EQ(j["result"]["pairs"].size(), 4u);
    EXPECT_EQ(j["result"]["pairs"][0]["a"], "1");
    EXPECT_EQ(j["result"]["pairs"][0]["b"], "18");
    EXPECT_EQ(j["result"]["count_formula"], "4");
    // numbers ride as decimal strings
    EXPECT_TRUE(j["result"]["count_enumerated"].is_string());
    // round-trip
    EXPECT_EQ(json::parse(j.dump()), j);
}

TEST(CliSolve, GoldenOutputs) {
    const auto nine = run_cli("solve 9");
    EXPECT_EQ(nine.exit_code, 0);
    EXPECT_NE(nine.out.find("(k, x) = (4, 7)"), std::string::npos);
    EXPECT_NE(nine.out.find("(k, x) = (5, 6)"), std::string::npos);

    const auto eight = run_cli("solve 8");
    EXPECT_EQ(eight.exit_code, 0);
    EXPECT_NE(eight.out.find("nontrivial solutions (0):"), std::string::npos);

    const auto twentytwo = run_cli("solve 22");
    EXPECT_EQ(twentytwo.exit_code, 0);
    EXPECT_NE(twentytwo.out.find("(k, x) = (12, 14)"), std::string::npos);
}

TEST(CliVerify, ExitCodes) {
    const auto equal = run_cli("verify 4 7 9");
    EXPECT_EQ(equal.exit_code, 0);
    EXPECT_NE(equal.out.find("lhs = 2304"), std::string::npos);
    EXPECT_NE(equal.out.find("equal: yes"), std::string::npos);

    const auto unequal = run_cli("verify 5 7 9");
    EXPECT_EQ(unequal.exit_code, 1);
    EXPECT_NE(unequal.out.find("equal: no"), std::string::npos);

    const auto trivial = run_cli("verify 8 2 9");
    EXPECT_EQ(trivial.exit_code, 0);
    EXPECT_NE(trivial.out.find("trivial-x2"), std::string::npos);
}

TEST(CliCharacterize, Verdicts) {
    const auto ten = run_cli("characterize 10");
    EXPECT_EQ(ten.exit_code, 0);
    EXPECT_NE(ten.out.find("N = 111 = 3 * 37"), std::string::npos);
    EXPECT_NE(ten.out.find("three times a prime: yes"), std::string::npos);
    EXPECT_NE(ten.out.find("(not p, not 3p): no"), std::string::npos);

    const auto eighteen = run_cli("characterize 18");
    EXPECT_EQ(eighteen.exit_code, 0);
    EXPECT_NE(eighteen.out.find("N = 343 = 7^3"), std::string::npos);
    EXPECT_NE(eighteen.out.find("positive representations m = 4"), std::string::npos);
    EXPECT_NE(eighteen.out.find("verdicts agree: yes"), std::string::npos);

    const auto nine = run_cli("characterize 9");
    EXPECT_EQ(nine.exit_code, 0);
    EXPECT_NE(nine.out.find("N = 91 = 7 * 13"), std::string::npos);
    EXPECT_NE(nine.out.find("(multiplicity >= 2): yes"), std::string::npos);
}

TEST(CliPigeonhole, ConstructionAndFailure) {
    const auto nine = run_cli("pigeonhole 9");
    EXPECT_EQ(nine.exit_code, 0);
    EXPECT_NE(nine.out.find("s = 7"), std::string::npos);
    EXPECT_NE(nine.out.find("(a, b) = (6, 5)"), std::string::npos);
    EXPECT_NE(nine.out.find("solution: (k, x) = (5, 6)"), std::string::npos);

    const auto eight = run_cli("pigeonhole 8");
    EXPECT_EQ(eight.exit_code, 2);  // hypotheses fail: 73 is prime

    const auto twentytwo = run_cli("pigeonhole 22");
    EXPECT_EQ(twentytwo.exit_code, 0);
    EXPECT_NE(twentytwo.out.find("(a, b) = (13, 13)"), std::string::npos);

    const auto overridden = run_cli("pigeonhole 9 --s 13");
    EXPECT_EQ(overridden.exit_code, 0);
    EXPECT_NE(overridden.out.find("s = 13"), std::string::npos);
}

TEST(CliScan, DeterministicAcrossJobs) {
    const auto one = run_cli("scan --max 100 --jobs 1");
    const auto four = run_cli("scan --max 100 --jobs 4");
    EXPECT_EQ(one.exit_code, 0);
    EXPECT_EQ(four.exit_code, 0);
    EXPECT_EQ(one.out, four.out);
    EXPECT_NE(one.out.find("counterexamples: 0"), std::string::npos);
}

TEST(CliScan, JsonReport) {
    const auto r = run_cli("--format json scan --max 100 --jobs 2");
    ASSERT_EQ(r.exit_code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["result"]["mode"], "conjecture");
    EXPECT_EQ(j["result"]["checked"], "99");
    EXPECT_TRUE(j["result"]["counterexamples"].empty());
    EXPECT_TRUE(j["result"]["elapsed_seconds"].is_string());
}

TEST(CliScan, EquivalenceMode) {
    const auto r = run_cli("scan --max 500 --mode equivalence --enum-cap 500");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("mode: equivalence"), std::string::npos);
    EXPECT_NE(r.out.find("disagreements: 0"), std::string::npos);
}

TEST(CliUsage, ErrorsExitTwo) {
    EXPECT_EQ(run_cli("nonsense").exit_code, 2);
    EXPECT_EQ(run_cli("reps").exit_code, 2);           // missing N
    EXPECT_EQ(run_cli("solve 0").exit_code, 2);        // domain error
    EXPECT_EQ(run_cli("solve 2000000").exit_code, 2);  // beyond the solver range
    EXPECT_EQ(run_cli("reps 91 --all --positive").exit_code, 2);
    EXPECT_EQ(run_cli("scan --max 200000000").exit_code, 2);
}

TEST(CliUsage, JsonErrorEnvelope) {
    const auto r = run_cli("--format json solve 0");
    EXPECT_EQ(r.exit_code, 2);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["status"], "error");
    EXPECT_FALSE(j["result"]["message"].get<std::string>().empty());
}
