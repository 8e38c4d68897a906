#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "test_util.hpp"

// End-to-end checks against the installed binary. QPLEX_CLI_PATH is baked in
// by the build so the tests run the exact artifact they ship with.

namespace {

using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

RunResult run_cli(const std::string& args) {
    static int seq = 0;
    std::string base = "/tmp/qplex_cli_" + std::to_string(++seq);
    std::string cmd = std::string(QPLEX_CLI_PATH) + " " + args +
                      " > " + base + ".out 2> " + base + ".err";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    std::remove((base + ".out").c_str());
    std::remove((base + ".err").c_str());
    return r;
}

const char* g6_path() {
    static std::string path = [] {
        std::string p = "/tmp/qplex_cli_g6.txt";
        spit(p, testutil::g6_edge_list);
        return p;
    }();
    return path.c_str();
}

}  // namespace

TEST(CliExitCodes, MalformedGraphMapsToTwo) {
    spit("/tmp/qplex_cli_bad.txt", "not a graph\n");
    RunResult r = run_cli("exact --graph /tmp/qplex_cli_bad.txt --k 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST(CliExitCodes, MissingFileMapsToTwo) {
    RunResult r = run_cli("exact --graph /tmp/qplex_no_such_file --k 2");
    EXPECT_EQ(r.code, 2);
}

TEST(CliExitCodes, ExhaustiveLimitMapsToThree) {
    RunResult gen = run_cli(std::string("gen --n 24 --m 60 --seed 2 --out /tmp/qplex_cli_big.txt"));
    ASSERT_EQ(gen.code, 0);
    RunResult r = run_cli("exact --graph /tmp/qplex_cli_big.txt --k 2");
    EXPECT_EQ(r.code, 3);
}

TEST(CliExitCodes, WeakPenaltyMapsToFour) {
    RunResult r = run_cli(std::string("qubo --graph ") + g6_path() + " --k 2 --r 1");
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("exceed 1"), std::string::npos);
}

TEST(CliExitCodes, AnnealWithoutInputMapsToFour) {
    RunResult r = run_cli("anneal --shots 5");
    EXPECT_EQ(r.code, 4);
}

TEST(CliExact, ReportsOptimumAndWitnesses) {
    RunResult r = run_cli(std::string("exact --graph ") + g6_path() + " --k 2");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["optimum"], 4);
    EXPECT_EQ(j["witnesses"], json::parse("[[1,2,4,5]]"));
    EXPECT_EQ(j["graph"]["fingerprint"], "2e576c884284f94c");
    EXPECT_EQ(j["solution_count_at"]["4"], 1);
}

TEST(CliGrover, ThresholdSearchVerifiesItsSample) {
    RunResult r = run_cli(std::string("grover --graph ") + g6_path() +
                          " --k 2 --t 4 --shots 2000 --seed 1");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["task"], "threshold");
    EXPECT_TRUE(j["outcome"]["feasible"].get<bool>());
    EXPECT_EQ(j["outcome"]["result"], json::parse("[1,2,4,5]"));
    EXPECT_EQ(j["outcome"]["iterations"], 6);
    EXPECT_GT(j["outcome"]["success_frequency"].get<double>(), 0.9);
    EXPECT_FALSE(j["outcome"]["grover"].contains("final_amplitudes"));
}

TEST(CliGrover, MaximumSearchMatchesBruteForce) {
    RunResult r = run_cli(std::string("grover --graph ") + g6_path() +
                          " --k 2 --shots 2000 --seed 7");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["task"], "maximum");
    EXPECT_EQ(j["trace"]["optimum"], 4);
    EXPECT_EQ(j["trace"]["best"], json::parse("[1,2,4,5]"));
}

TEST(CliGrover, AmplitudeFlagAddsTheStatevector) {
    RunResult r = run_cli(std::string("grover --graph ") + g6_path() +
                          " --k 2 --t 4 --shots 100 --seed 1 --emit-amplitudes");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["outcome"]["grover"]["final_amplitudes"].size(), 64u);
}

TEST(CliStats, EncodeStageSpendsOneGatePerComplementEdge) {
    RunResult r = run_cli(std::string("stats --graph ") + g6_path() + " --k 2 --t 4");
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["oracle"]["m_complement"], 8);
    EXPECT_EQ(j["oracle"]["stages"]["encode"], 8);
    EXPECT_GT(j["ancilla_wires"].get<int>(), 0);
}

TEST(CliPipeline, QuboExportFeedsTheAnnealer) {
    RunResult q = run_cli(std::string("qubo --graph ") + g6_path() +
                          " --k 2 --r 2 --out /tmp/qplex_cli_model.qubo");
    ASSERT_EQ(q.code, 0);
    std::string model = slurp("/tmp/qplex_cli_model.qubo");
    EXPECT_EQ(model.rfind("# vars 19\n# offset 100\n", 0), 0u);

    RunResult a = run_cli("anneal --model /tmp/qplex_cli_model.qubo --shots 200 --sweeps 20"
                          " --seed 42 --trajectory /tmp/qplex_cli_traj.csv");
    ASSERT_EQ(a.code, 0);
    json j = json::parse(a.out);
    EXPECT_DOUBLE_EQ(j["result"]["best_cost"].get<double>(), -4.0);
    EXPECT_EQ(j["result"]["best_size"], 4);
    EXPECT_TRUE(j["result"]["best_feasible"].get<bool>());
    EXPECT_EQ(j["result"]["best_subset"], json::parse("[1,2,4,5]"));
    EXPECT_EQ(j["graph"]["fingerprint"], "2e576c884284f94c");

    std::string csv = slurp("/tmp/qplex_cli_traj.csv");
    EXPECT_EQ(csv.rfind("budget,best_cost,best_size,feasible\n", 0), 0u);
    EXPECT_NE(csv.find("\n4000,-4,4,1\n"), std::string::npos);  // 200 shots x 20 sweeps
}

TEST(CliPipeline, LpExportIsWellFormed) {
    RunResult r = run_cli(std::string("lp --graph ") + g6_path() + " --k 2 --r 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Minimize\n"), std::string::npos);
    EXPECT_NE(r.out.find("Subject To\n"), std::string::npos);
    EXPECT_NE(r.out.find("Binary\n"), std::string::npos);
    EXPECT_NE(r.out.find("End\n"), std::string::npos);
}

TEST(CliPipeline, RerunsAreByteIdentical) {
    std::string args = std::string("grover --graph ") + g6_path() +
                       " --k 2 --t 4 --shots 500 --seed 9";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    ASSERT_EQ(first.code, 0);
    EXPECT_EQ(first.out, second.out);

    std::string anneal_args = std::string("anneal --graph ") + g6_path() +
                              " --k 2 --r 2 --shots 30 --sweeps 5 --seed 4";
    EXPECT_EQ(run_cli(anneal_args).out, run_cli(anneal_args).out);
}

TEST(CliGen, WritesAParsableDeterministicGraph) {
    RunResult a = run_cli("gen --n 8 --m 12 --seed 3");
    RunResult b = run_cli("gen --n 8 --m 12 --seed 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    qplex::Graph g = qplex::parse_graph(a.out, qplex::GraphFormat::edge_list);
    EXPECT_EQ(g.n, 8);
    EXPECT_EQ(g.m(), 12);
}

TEST(CliGrowth, TableCoversTheRequestedRange) {
    RunResult r = run_cli("growth --n-min 6 --n-max 9 --k 2 --seed 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("n,m,qubo_vars,qubo_vars_floor,oracle_wires,two_n_log2_n\n", 0), 0u);
    std::size_t rows = 0;
    for (char c : r.out)
        if (c == '\n') ++rows;
    EXPECT_EQ(rows, 5u);  // header + one per n
    EXPECT_NE(r.out.find("\n6,"), std::string::npos);
    EXPECT_NE(r.out.find("\n9,"), std::string::npos);
}
