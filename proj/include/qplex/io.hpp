#pragma once

#include <string>

#include "json.hpp"

#include "qplex/anneal.hpp"
#include "qplex/graph.hpp"
#include "qplex/grover.hpp"
#include "qplex/oracle.hpp"
#include "qplex/qubo.hpp"
#include "qplex/search.hpp"
#include "qplex/version.hpp"

// JSON views of the result structures. Field order is fixed (ordered_json)
// and every randomized result carries its seed and generator id, so equal
// inputs serialize to identical bytes.

namespace qplex {

using json = nlohmann::ordered_json;

// Common preamble identifying the tool, the subcommand and the input graph.
inline json manifest_json(const std::string& subcommand, const Graph& g) {
    json j;
    j["tool"] = "qplex";
    j["version"] = qplex_version;
    j["subcommand"] = subcommand;
    j["graph"] = {{"n", g.n}, {"m", g.m()}, {"fingerprint", fingerprint_hex(g)}};
    return j;
}

inline json vertices_json(const VertexSet& s) {
    json arr = json::array();
    for (int v = 1; v <= s.n; ++v)
        if (s.contains(v)) arr.push_back(v);
    return arr;
}

inline json stats_json(const OracleStats& s) {
    json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["m_complement"] = s.m_complement;
    j["wires"] = s.wires;
    j["gates"] = s.gates;
    j["stages"] = {{"encode", s.stages.encode},
                   {"count", s.stages.count},
                   {"compare", s.stages.compare},
                   {"size", s.stages.size}};
    return j;
}

inline json schedule_json(const GroverSchedule& s) {
    json j;
    j["n"] = s.n;
    j["basis_size"] = s.basis_size;
    j["marked"] = s.marked;
    j["theta"] = s.theta;
    j["iterations"] = s.iterations;
    return j;
}

inline json grover_json(const GroverResult& r, bool include_amplitudes) {
    json j;
    j["schedule"] = schedule_json(r.schedule);
    j["success_frequency"] = r.success_frequency;
    json hist = json::object();
    for (const auto& [basis, count] : r.histogram)
        hist[std::to_string(basis)] = count;
    j["histogram"] = hist;
    json snaps = json::array();
    for (const Snapshot& s : r.snapshots)
        snaps.push_back({{"iteration", s.iteration}, {"probabilities", s.probabilities}});
    j["snapshots"] = snaps;
    if (include_amplitudes) {
        json amps = json::array();
        for (const auto& a : r.final_amplitudes) amps.push_back({a.real(), a.imag()});
        j["final_amplitudes"] = amps;
    }
    return j;
}

inline json tkp_json(const TkpOutcome& o, bool include_amplitudes) {
    json j;
    j["t"] = o.t;
    j["feasible"] = o.feasible;
    j["result"] = vertices_json(o.result);
    j["m_marked"] = o.m_marked;
    j["iterations"] = o.iterations;
    j["attempts"] = o.attempts;
    j["success_frequency"] = o.success_frequency;
    j["shots"] = o.shots;
    j["grover"] = grover_json(o.grover, include_amplitudes);
    return j;
}

inline json mkp_json(const MkpTrace& t) {
    json j;
    j["n"] = t.n;
    j["k"] = t.k;
    j["optimum"] = t.optimum_size;
    j["best"] = vertices_json(t.best);
    j["first_result"] = vertices_json(t.first_result);
    j["first_result_size"] = t.first_result.size();
    json probes = json::array();
    for (const ProbeRecord& p : t.probes)
        probes.push_back({{"t", p.t},
                          {"feasible", p.feasible},
                          {"witness", vertices_json(p.witness)},
                          {"m_marked", p.m_marked},
                          {"iterations", p.iterations},
                          {"attempts", p.attempts}});
    j["probes"] = probes;
    j["shots"] = t.shots;
    j["seed"] = t.seed;
    j["rng_id"] = rng_id;
    return j;
}

inline json anneal_json(const QuboModel& m, const AnnealReport& rep) {
    json j;
    j["vars"] = m.layout.total;
    j["k"] = m.k;
    j["r"] = m.r;
    j["shots"] = rep.config.shots;
    j["sweeps"] = rep.config.sweeps;
    j["t_hot"] = rep.config.t_hot;
    j["t_cold"] = rep.config.t_cold;
    j["seed"] = rep.config.seed;
    j["rng_id"] = rng_id;
    j["best_cost"] = rep.best_cost;
    j["best_size"] = rep.best.size;
    j["best_feasible"] = rep.best.feasible;
    j["best_penalty"] = rep.best.penalty;
    j["best_subset"] = vertices_json(rep.best.subset);
    if (rep.found_feasible) {
        j["feasible_size"] = rep.best_feasible.size;
        j["feasible_subset"] = vertices_json(rep.best_feasible.subset);
        j["feasible_cost"] = rep.best_feasible.cost;
    }
    return j;
}

// One row per shot. The budget axis counts sweeps, not wall-clock: after
// shot s it reads s * sweeps.
inline std::string trajectory_csv(const AnnealReport& rep) {
    std::string out = "budget,best_cost,best_size,feasible\n";
    for (const TrajectoryRow& row : rep.trajectory)
        out += std::to_string(std::int64_t(row.budget) * rep.config.sweeps) + "," +
               detail::format_number(row.best_cost) + "," + std::to_string(row.best_size) + "," +
               (row.feasible ? "1" : "0") + "\n";
    return out;
}

}
