#include "qplex/io.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qplex/anneal.hpp"
#include "qplex/oracle.hpp"
#include "qplex/qubo.hpp"
#include "qplex/search.hpp"
#include "test_util.hpp"

using namespace qplex;

TEST(IoTest, ManifestNamesToolVersionAndGraph) {
    json j = manifest_json("exact", testutil::g6());
    EXPECT_EQ(j["tool"], "qplex");
    EXPECT_EQ(j["version"], std::string(qplex_version));
    EXPECT_EQ(j["subcommand"], "exact");
    EXPECT_EQ(j["graph"]["n"], 6);
    EXPECT_EQ(j["graph"]["m"], 7);
    EXPECT_EQ(j["graph"]["fingerprint"], fingerprint_hex(testutil::g6()));
}

TEST(IoTest, VerticesJsonListsMembersAscending) {
    json j = vertices_json(VertexSet::of(6, {5, 1, 4}));
    EXPECT_EQ(j, json({1, 4, 5}));
    EXPECT_EQ(vertices_json(VertexSet{6, 0}), json::array());
}

TEST(IoTest, StatsJsonMirrorsTheAccounting) {
    OracleCircuit o = build_oracle(complement(testutil::g6()), 2, 4);
    json j = stats_json(stats(o));
    EXPECT_EQ(j["n"], 6);
    EXPECT_EQ(j["m"], 7);
    EXPECT_EQ(j["m_complement"], 8);
    EXPECT_EQ(j["stages"]["encode"], 8);
    EXPECT_EQ(j["wires"], o.stats.wires);
    EXPECT_EQ(int(j["stages"]["encode"]) + int(j["stages"]["count"]) +
                  int(j["stages"]["compare"]) + int(j["stages"]["size"]),
              int(j["gates"]));
}

TEST(IoTest, GroverJsonKeepsHistogramAndSnapshots) {
    std::vector<bool> marked(8, false);
    marked[5] = true;
    GroverResult r = grover_run(3, marked, 500, 11);
    json with_amps = grover_json(r, true);
    json without = grover_json(r, false);
    EXPECT_EQ(with_amps["schedule"]["n"], 3);
    EXPECT_EQ(with_amps["schedule"]["marked"], 1);
    EXPECT_EQ(with_amps["snapshots"].size(), r.snapshots.size());
    EXPECT_EQ(with_amps["final_amplitudes"].size(), 8u);
    EXPECT_FALSE(without.contains("final_amplitudes"));
    std::uint64_t total = 0;
    for (const auto& [key, count] : with_amps["histogram"].items())
        total += count.get<std::uint64_t>();
    EXPECT_EQ(total, 500u);
}

TEST(IoTest, TkpJsonCarriesTheVerifiedResult) {
    TkpOutcome o = qtkp(testutil::g6(), 2, 4, 2000, 1);
    json j = tkp_json(o, false);
    EXPECT_EQ(j["t"], 4);
    EXPECT_TRUE(j["feasible"].get<bool>());
    EXPECT_EQ(j["result"], json({1, 2, 4, 5}));
    EXPECT_EQ(j["iterations"], 6);
    EXPECT_EQ(j["m_marked"], 1);
}

TEST(IoTest, MkpJsonRecordsEveryProbe) {
    MkpTrace t = qmkp(testutil::g6(), 2, 2000, 3);
    json j = mkp_json(t);
    EXPECT_EQ(j["optimum"], 4);
    EXPECT_EQ(j["best"], json({1, 2, 4, 5}));
    EXPECT_EQ(j["probes"].size(), t.probes.size());
    EXPECT_EQ(j["rng_id"], std::string(rng_id));
    for (const auto& p : j["probes"]) {
        EXPECT_TRUE(p.contains("t"));
        EXPECT_TRUE(p.contains("feasible"));
        EXPECT_TRUE(p.contains("iterations"));
    }
}

TEST(IoTest, TrajectoryCsvHasOneRowPerShot) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    AnnealReport rep = anneal(m, {.shots = 5, .sweeps = 3, .seed = 2});
    std::string csv = trajectory_csv(rep);
    EXPECT_EQ(csv.rfind("budget,best_cost,best_size,feasible\n", 0), 0u);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    EXPECT_EQ(rows, 6u);  // header + one per shot
    EXPECT_EQ(csv.back(), '\n');
    EXPECT_NE(csv.find("\n15,"), std::string::npos);  // budget counts sweeps: 5 shots x 3

    json j = anneal_json(m, rep);
    EXPECT_EQ(j["vars"], 19);
    EXPECT_EQ(j["shots"], 5);
    EXPECT_DOUBLE_EQ(j["best_cost"].get<double>(), rep.best_cost);
    EXPECT_EQ(j["rng_id"], std::string(rng_id));
}
