#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qplex/graph.hpp"
#include "qplex/grover.hpp"
#include "qplex/oracle.hpp"

// Search pipelines on top of the oracle and the amplitude engine.
//
// qtkp answers "is there a k-plex of size >= T" by amplifying the oracle's
// accepting states, measuring, and classically verifying the most frequent
// outcome. qmkp binary-searches the largest feasible T. The marked-state
// count M feeds the iteration schedule; at this scale it comes from scanning
// the oracle over all basis states, standing in for a counting routine.

namespace qplex {

// evaluate the oracle on every basis state, v1 as the most significant bit
inline std::vector<bool> oracle_bitmap(const OracleCircuit& o) {
    const int n = static_cast<int>(o.layout.vertex.size());
    std::vector<bool> marked(std::uint64_t{1} << n, false);
    for (std::uint64_t b = 0; b < marked.size(); ++b)
        marked[b] = evaluate(o, VertexSet::from_basis_index(n, b));
    return marked;
}

inline bool verify_candidate(const Graph& g, int k, int t, const VertexSet& s) {
    return s.size() >= t && is_kplex(g, s, k);
}

struct TkpOutcome {
    int t = 0;
    bool feasible = false;
    VertexSet result;              // empty when infeasible
    std::uint64_t m_marked = 0;
    int iterations = 0;
    int attempts = 0;              // grover runs spent (verification retries)
    double success_frequency = 0.0;
    std::uint64_t shots = 0;
    GroverResult grover;           // last run, for amplitude export
};

inline constexpr int qtkp_max_retries = 3;

// One threshold query. M == 0 short-circuits to an infeasible outcome; a
// verified measurement is required otherwise, with a bounded retry budget
// against unlucky sampling.
inline TkpOutcome qtkp(const Graph& g, int k, int t, std::uint64_t shots, std::uint64_t seed) {
    Graph gc = complement(g);
    OracleCircuit oracle = build_oracle(gc, k, t);
    std::vector<bool> marked = oracle_bitmap(oracle);

    TkpOutcome out;
    out.t = t;
    out.shots = shots;
    out.result = VertexSet{g.n, 0};
    for (bool b : marked)
        if (b) ++out.m_marked;
    if (out.m_marked == 0) {
        out.grover.schedule = make_schedule(g.n, 0);
        return out;
    }

    for (int attempt = 0; attempt <= qtkp_max_retries; ++attempt) {
        GroverResult res = grover_run(g.n, marked, shots,
                                      derive_seed(seed, static_cast<std::uint64_t>(t), attempt));
        std::uint64_t modal = 0, best_count = 0;
        for (const auto& [basis, count] : res.histogram)
            if (count > best_count) {  // map order breaks ties toward the smaller basis
                modal = basis;
                best_count = count;
            }
        VertexSet candidate = VertexSet::from_basis_index(g.n, modal);
        out.attempts = attempt + 1;
        out.iterations = res.schedule.iterations;
        out.success_frequency = res.success_frequency;
        if (verify_candidate(g, k, t, candidate)) {
            out.feasible = true;
            out.result = candidate;
            out.grover = std::move(res);
            return out;
        }
    }
    throw std::runtime_error("threshold " + std::to_string(t) + ": modal measurement failed verification " +
                             std::to_string(qtkp_max_retries + 1) + " times");
}

struct ProbeRecord {
    int t = 0;
    bool feasible = false;
    VertexSet witness;
    std::uint64_t m_marked = 0;
    int iterations = 0;
    int attempts = 0;
};

struct MkpTrace {
    int n = 0;
    int k = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<ProbeRecord> probes;
    VertexSet first_result;        // witness of the earliest feasible probe
    VertexSet best;
    int optimum_size = 0;
};

// Maximum k-plex by binary search over the threshold. lo is the largest
// known-feasible T (a single vertex is always a k-plex), hi = n+1 is the
// infeasible sentinel. When the search closes without ever probing a
// feasible T, one extra probe at lo fetches a witness.
inline MkpTrace qmkp(const Graph& g, int k, std::uint64_t shots, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    MkpTrace trace;
    trace.n = g.n;
    trace.k = k;
    trace.shots = shots;
    trace.seed = seed;
    trace.best = VertexSet{g.n, 0};
    trace.first_result = VertexSet{g.n, 0};

    int lo = 1, hi = g.n + 1;
    bool have_witness = false;
    auto probe = [&](int t) {
        TkpOutcome out = qtkp(g, k, t, shots, seed);
        trace.probes.push_back({t, out.feasible, out.result, out.m_marked, out.iterations, out.attempts});
        if (out.feasible && !have_witness) {
            trace.first_result = out.result;
            have_witness = true;
        }
        return out;
    };

    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        TkpOutcome out = probe(mid);
        if (out.feasible) {
            lo = mid;
            trace.best = out.result;
        } else {
            hi = mid;
        }
    }
    if (trace.best.empty()) {
        TkpOutcome out = probe(lo);
        trace.best = out.result;  // T = lo is feasible for any non-empty graph
    }
    trace.optimum_size = lo;
    return trace;
}

}
