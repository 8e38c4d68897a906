#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qplex/anneal.hpp"
#include "qplex/graph.hpp"
#include "qplex/io.hpp"
#include "qplex/oracle.hpp"
#include "qplex/qubo.hpp"
#include "qplex/search.hpp"
#include "qplex/version.hpp"

// Command line front end. Every subcommand reads a graph (or a previously
// exported model), runs one pipeline stage and writes a deterministic
// artifact: JSON for results, coordinate text for models, CSV for tables.
// Exit codes: 0 ok, 2 malformed input, 3 resource limit, 4 bad parameter.

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qplex::parse_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qplex::parse_error("cannot write '" + path + "'");
    out << text;
}

qplex::Graph load_graph(const std::string& path) {
    std::string text = slurp(path);
    return qplex::parse_graph(text, qplex::detect_graph_format(text));
}

std::string dump(const qplex::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum k-plex workbench: exact search, Grover-style amplitude "
                 "simulation and QUBO annealing on one graph input"};
    app.set_version_flag("--version", qplex::qplex_version);
    app.require_subcommand(1);

    std::string graph_path, model_path, out_path, trajectory_path;
    int k = 2, t = 0, limit = 20, n = 0, m = 0;
    int n_min = 10, n_max = 40, shots = 10000, sweeps = 2;
    double r = 2.0, density = 0.5, t_hot = 0.0, t_cold = 0.01;
    std::uint64_t seed = 0;
    bool emit_amplitudes = false;

    auto* exact = app.add_subcommand("exact", "brute-force maximum k-plex reference");
    exact->add_option("--graph", graph_path, "input graph file")->required();
    exact->add_option("--k", k, "plex relaxation, 1 = clique")->required();
    exact->add_option("--limit", limit, "largest vertex count the scan accepts")
        ->capture_default_str();
    exact->add_option("--out", out_path, "write JSON here instead of stdout");
    exact->callback([&]() {
        qplex::Graph g = load_graph(graph_path);
        qplex::MkpResult res = qplex::brute_force_mkp(g, k, limit);
        qplex::json j = qplex::manifest_json("exact", g);
        j["params"] = {{"k", k}, {"limit", limit}};
        j["optimum"] = res.optimum;
        qplex::json wit = qplex::json::array();
        for (const qplex::VertexSet& w : res.witnesses) wit.push_back(qplex::vertices_json(w));
        j["witnesses"] = wit;
        qplex::json counts = qplex::json::object();
        for (const auto& [thresh, cnt] : res.solution_count_at)
            counts[std::to_string(thresh)] = cnt;
        j["solution_count_at"] = counts;
        emit(out_path, dump(j));
    });

    auto* grover = app.add_subcommand("grover", "amplitude-simulated threshold or maximum search");
    grover->add_option("--graph", graph_path, "input graph file")->required();
    grover->add_option("--k", k, "plex relaxation")->required();
    auto* t_opt = grover->add_option("--t", t, "size threshold; omit to binary-search the maximum");
    grover->add_option("--shots", shots, "measurement samples per run")->capture_default_str();
    grover->add_option("--seed", seed, "master seed")->capture_default_str();
    grover->add_flag("--emit-amplitudes", emit_amplitudes, "include the final statevector");
    grover->add_option("--out", out_path, "write JSON here instead of stdout");
    grover->callback([&]() {
        qplex::Graph g = load_graph(graph_path);
        qplex::json j = qplex::manifest_json("grover", g);
        if (t_opt->count() > 0) {
            j["task"] = "threshold";
            j["params"] = {{"k", k}, {"t", t}, {"shots", shots},
                           {"seed", seed}, {"rng_id", qplex::rng_id}};
            qplex::TkpOutcome o = qplex::qtkp(g, k, t, std::uint64_t(shots), seed);
            j["outcome"] = qplex::tkp_json(o, emit_amplitudes);
        } else {
            j["task"] = "maximum";
            j["params"] = {{"k", k}, {"shots", shots},
                           {"seed", seed}, {"rng_id", qplex::rng_id}};
            qplex::MkpTrace trace = qplex::qmkp(g, k, std::uint64_t(shots), seed);
            j["trace"] = qplex::mkp_json(trace);
        }
        emit(out_path, dump(j));
    });

    auto* stats_cmd = app.add_subcommand("stats", "oracle size accounting without simulation");
    stats_cmd->add_option("--graph", graph_path, "input graph file")->required();
    stats_cmd->add_option("--k", k, "plex relaxation")->required();
    stats_cmd->add_option("--t", t, "size threshold")->required();
    stats_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
    stats_cmd->callback([&]() {
        qplex::Graph g = load_graph(graph_path);
        qplex::OracleCircuit oracle = qplex::build_oracle(qplex::complement(g), k, t);
        qplex::json j = qplex::manifest_json("stats", g);
        j["params"] = {{"k", k}, {"t", t}};
        j["oracle"] = qplex::stats_json(qplex::stats(oracle));
        j["ancilla_wires"] = oracle.u_check.ancilla_manifest.size();
        emit(out_path, dump(j));
    });

    auto* qubo_cmd = app.add_subcommand("qubo", "export the penalty model in coordinate text");
    qubo_cmd->add_option("--graph", graph_path, "input graph file")->required();
    qubo_cmd->add_option("--k", k, "plex relaxation")->required();
    qubo_cmd->add_option("--r", r, "penalty weight, must exceed 1")->capture_default_str();
    qubo_cmd->add_option("--out", out_path, "write the model here instead of stdout");
    qubo_cmd->callback([&]() {
        emit(out_path, qplex::export_qubo(qplex::build_qubo(load_graph(graph_path), k, r)));
    });

    auto* lp_cmd = app.add_subcommand("lp", "export the linearized model in LP format");
    lp_cmd->add_option("--graph", graph_path, "input graph file")->required();
    lp_cmd->add_option("--k", k, "plex relaxation")->required();
    lp_cmd->add_option("--r", r, "penalty weight, must exceed 1")->capture_default_str();
    lp_cmd->add_option("--out", out_path, "write the model here instead of stdout");
    lp_cmd->callback([&]() {
        emit(out_path, qplex::export_lp(qplex::build_qubo(load_graph(graph_path), k, r)));
    });

    auto* anneal_cmd = app.add_subcommand("anneal", "simulated-annealing sampler for the model");
    auto* model_opt = anneal_cmd->add_option("--model", model_path, "previously exported model file");
    auto* graph_opt = anneal_cmd->add_option("--graph", graph_path, "input graph file");
    anneal_cmd->add_option("--k", k, "plex relaxation, used with --graph")->capture_default_str();
    anneal_cmd->add_option("--r", r, "penalty weight, used with --graph")->capture_default_str();
    anneal_cmd->add_option("--shots", shots, "independent restarts")->capture_default_str();
    anneal_cmd->add_option("--sweeps", sweeps, "Metropolis passes per restart")->capture_default_str();
    anneal_cmd->add_option("--t-hot", t_hot, "start temperature, 0 = largest coefficient")
        ->capture_default_str();
    anneal_cmd->add_option("--t-cold", t_cold, "final temperature")->capture_default_str();
    anneal_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    anneal_cmd->add_option("--out", out_path, "write JSON here instead of stdout");
    anneal_cmd->add_option("--trajectory", trajectory_path, "also write a best-so-far CSV here");
    model_opt->excludes(graph_opt);
    anneal_cmd->callback([&]() {
        if (model_opt->count() == 0 && graph_opt->count() == 0)
            throw std::invalid_argument("anneal needs --model or --graph");
        qplex::QuboModel model = model_opt->count() > 0
                                     ? qplex::parse_qubo(slurp(model_path))
                                     : qplex::build_qubo(load_graph(graph_path), k, r);
        qplex::AnnealConfig cfg{shots, sweeps, t_hot, t_cold, seed};
        qplex::AnnealReport rep = qplex::anneal(model, cfg);
        qplex::json j = qplex::manifest_json("anneal", model.original);
        j["result"] = qplex::anneal_json(model, rep);
        if (!trajectory_path.empty())
            emit(trajectory_path, qplex::trajectory_csv(rep));
        emit(out_path, dump(j));
    });

    auto* growth = app.add_subcommand("growth", "model-size table over random instances");
    growth->add_option("--n-min", n_min, "smallest vertex count")->capture_default_str();
    growth->add_option("--n-max", n_max, "largest vertex count")->capture_default_str();
    growth->add_option("--density", density, "edge density of the random instances")
        ->capture_default_str();
    growth->add_option("--k", k, "plex relaxation")->capture_default_str();
    growth->add_option("--seed", seed, "master seed")->capture_default_str();
    growth->add_option("--out", out_path, "write CSV here instead of stdout");
    growth->callback([&]() {
        if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n-min <= n-max");
        if (!(density >= 0.0 && density <= 1.0))
            throw std::invalid_argument("density must lie in [0, 1]");
        std::string csv = "n,m,qubo_vars,qubo_vars_floor,oracle_wires,two_n_log2_n\n";
        for (int nn = n_min; nn <= n_max; ++nn) {
            int pairs = nn * (nn - 1) / 2;
            int edges = int(std::lround(density * pairs));
            qplex::Graph g = qplex::random_gnm(nn, edges, qplex::derive_seed(seed, nn));
            qplex::Graph gc = qplex::complement(g);
            int vars_ceil = nn, vars_floor = nn;
            for (int v = 1; v <= nn; ++v) {
                vars_ceil += qplex::slack_bits(qplex::degree(gc, v), k);
                vars_floor += qplex::slack_bits_rounded_down(qplex::degree(gc, v), k);
            }
            qplex::OracleCircuit oracle = qplex::build_oracle(gc, k, std::max(1, nn / 2));
            csv += std::to_string(nn) + "," + std::to_string(edges) + "," +
                   std::to_string(vars_ceil) + "," + std::to_string(vars_floor) + "," +
                   std::to_string(oracle.stats.wires) + "," +
                   qplex::detail::format_number(2.0 * nn * std::log2(double(nn))) + "\n";
        }
        emit(out_path, csv);
    });

    auto* gen = app.add_subcommand("gen", "write a uniform random graph with n vertices, m edges");
    gen->add_option("--n", n, "vertex count")->required();
    gen->add_option("--m", m, "edge count")->required();
    gen->add_option("--seed", seed, "generator seed")->capture_default_str();
    gen->add_option("--out", out_path, "write the edge list here instead of stdout");
    gen->callback([&]() {
        emit(out_path, qplex::write_edge_list(qplex::random_gnm(n, m, seed)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const qplex::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qplex::limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
