#pragma once

#include <string>
#include <vector>

#include "qplex/arithmetic.hpp"
#include "qplex/circuit.hpp"
#include "qplex/graph.hpp"

// Reversible oracle deciding "the selected vertices form a k-plex of the
// original graph and at least T of them are selected". It works on the
// complement graph: a set is a k-plex of g exactly when every member has at
// most k-1 complement neighbours inside the set. Stages:
//
//   encode   edge wire e_uv <- v_u AND v_v, one doubly controlled NOT per
//            complement edge
//   count    per-vertex counter c_i accumulates the active incident edge
//            wires, each increment additionally conditioned on v_i
//   compare  per vertex, flag d_i <- [c_i <= k-1]; then one AND over all
//            d_i into the cplex flag
//   size     popcount of the vertex register, flag [T <= size], and the
//            final AND of both flags into the oracle wire
//
// All scratch is cleared by running the inverse circuit after the oracle
// wire has been consumed.

namespace qplex {

struct OracleLayout {
    std::vector<int> vertex;
    std::vector<int> edge;                    // canonical (u<v, lexicographic) edge order
    std::vector<std::vector<int>> counter;    // per vertex, LSB first, width log2(deg+1)
    std::vector<int> degree_ok;
    int cplex = 0;
    std::vector<int> size_counter;
    std::vector<int> k_const;                 // holds k-1
    std::vector<int> t_const;                 // holds T
    int size_ok = 0;
    int oracle_out = 0;
    std::vector<int> zero_pad;                // read-only high bits for narrow counters
};

struct OracleStageGates {
    int encode = 0;
    int count = 0;
    int compare = 0;
    int size = 0;
};

struct OracleStats {
    int n = 0;
    int m = 0;             // edges of the original graph
    int m_complement = 0;
    int wires = 0;
    int gates = 0;
    OracleStageGates stages;
};

struct OracleCircuit {
    int k = 0;
    int t = 0;
    OracleLayout layout;
    ReversibleCircuit u_check;
    OracleStats stats;
};

namespace detail {

inline int bit_width_for(int max_value) {
    int w = 0;
    while ((1 << w) <= max_value && max_value > 0) ++w;
    return w;  // bits needed to hold max_value; 0 for max_value == 0
}

}  // namespace detail

// g_complement is the complement of the graph whose k-plexes are sought.
inline OracleCircuit build_oracle(const Graph& g_complement, int k, int t) {
    const int n = g_complement.n;
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (t < 1 || t > n) throw std::invalid_argument("threshold T must be in 1..n");

    OracleCircuit o;
    o.k = k;
    o.t = t;
    ReversibleCircuit& c = o.u_check;
    OracleLayout& lay = o.layout;

    const int mc = g_complement.m();
    std::vector<int> deg(n), cw(n);
    int max_cw = 0;
    for (int v = 1; v <= n; ++v) {
        deg[v - 1] = degree(g_complement, v);
        cw[v - 1] = detail::bit_width_for(deg[v - 1]);
        max_cw = std::max(max_cw, cw[v - 1]);
    }
    const int size_w = detail::bit_width_for(n);
    const int k_w = std::max({max_cw, detail::bit_width_for(k - 1), 1});
    int pad_w = 0;
    for (int i = 0; i < n; ++i) pad_w = std::max(pad_w, k_w - cw[i]);

    lay.vertex = add_register(c, "vertex", n);
    lay.edge = add_register(c, "edge", mc);
    for (int i = 0; i < n; ++i)
        lay.counter.push_back(add_register(c, "c" + std::to_string(i + 1), cw[i]));
    lay.degree_ok = add_register(c, "deg_ok", n);
    lay.cplex = add_register(c, "cplex", 1)[0];
    lay.size_counter = add_register(c, "size", size_w);
    lay.k_const = add_register(c, "kconst", k_w);
    lay.t_const = add_register(c, "tconst", size_w);
    lay.size_ok = add_register(c, "size_ok", 1)[0];
    lay.oracle_out = add_register(c, "oracle", 1)[0];
    lay.zero_pad = add_register(c, "pad", pad_w);

    // a counter register padded up to the k-constant's width, MSB first
    auto counter_msb = [&](int i) {
        std::vector<int> r;
        for (int p = k_w - cw[i]; p-- > 0;) r.push_back(lay.zero_pad[p]);
        for (int b = cw[i]; b-- > 0;) r.push_back(lay.counter[i][b]);
        return r;
    };

    // encode stage
    for (int j = 0; j < mc; ++j) {
        auto [u, v] = g_complement.edges[j];
        add_gate(c, lay.edge[j], {on(lay.vertex[u - 1]), on(lay.vertex[v - 1])});
    }
    o.stats.stages.encode = static_cast<int>(c.gates.size());

    // count stage
    for (int j = 0; j < mc; ++j) {
        auto [u, v] = g_complement.edges[j];
        for (int end : {u, v})
            build_controlled_increment(c, lay.counter[end - 1],
                                       {on(lay.vertex[end - 1]), on(lay.edge[j])});
    }
    int after_count = static_cast<int>(c.gates.size());
    o.stats.stages.count = after_count - o.stats.stages.encode;

    // compare stage: d_i <- [c_i <= k-1], then the conjunction of all d_i
    build_load_constant(c, lay.k_const, static_cast<std::uint64_t>(k - 1));
    std::vector<int> k_msb(lay.k_const.rbegin(), lay.k_const.rend());
    for (int i = 0; i < n; ++i)
        build_leq_comparator(c, counter_msb(i), k_msb, lay.degree_ok[i],
                             "cmp" + std::to_string(i + 1));
    {
        std::vector<Control> ctl;
        for (int i = 0; i < n; ++i) ctl.push_back(on(lay.degree_ok[i]));
        add_gate(c, lay.cplex, std::move(ctl));
    }
    int after_compare = static_cast<int>(c.gates.size());
    o.stats.stages.compare = after_compare - after_count;

    // size stage: popcount, [T <= size], and the oracle conjunction
    build_load_constant(c, lay.t_const, static_cast<std::uint64_t>(t));
    build_popcount(c, lay.vertex, lay.size_counter);
    std::vector<int> t_msb(lay.t_const.rbegin(), lay.t_const.rend());
    std::vector<int> size_msb(lay.size_counter.rbegin(), lay.size_counter.rend());
    build_leq_comparator(c, t_msb, size_msb, lay.size_ok, "cmpsize");
    add_gate(c, lay.oracle_out, {on(lay.cplex), on(lay.size_ok)});
    o.stats.stages.size = static_cast<int>(c.gates.size()) - after_compare;

    for (int w = 0; w < c.width; ++w) {
        bool is_vertex = w >= lay.vertex.front() && w <= lay.vertex.back();
        if (!is_vertex && w != lay.oracle_out) c.ancilla_manifest.push_back(w);
    }

    o.stats.n = n;
    o.stats.m_complement = mc;
    o.stats.m = n * (n - 1) / 2 - mc;
    o.stats.wires = c.width;
    o.stats.gates = static_cast<int>(c.gates.size());
    return o;
}

inline BasisState oracle_input(const OracleCircuit& o, const VertexSet& s) {
    BasisState in(o.u_check.width);
    for (int v = 1; v <= static_cast<int>(o.layout.vertex.size()); ++v)
        in.set(o.layout.vertex[v - 1], s.contains(v));
    return in;
}

// Oracle wire after running the check circuit on |s>|0...0>.
inline bool evaluate(const OracleCircuit& o, const VertexSet& s) {
    return run(o.u_check, oracle_input(o, s)).get(o.layout.oracle_out);
}

// Runs the check circuit followed by its inverse and verifies the state
// returned to |s>|0...0|: vertex bits intact, every scratch wire cleared.
inline bool roundtrip_clean(const OracleCircuit& o, const VertexSet& s) {
    BasisState in = oracle_input(o, s);
    BasisState out = run(inverse(o.u_check), run(o.u_check, in));
    return out == in;
}

inline OracleStats stats(const OracleCircuit& o) { return o.stats; }

}
