#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qplex/errors.hpp"
#include "qplex/rng.hpp"

namespace qplex {

inline constexpr int max_graph_vertices = 64;

// Subset of the vertices of an n-vertex graph. Vertices are numbered 1..n
// in every external format; bit i-1 of mask corresponds to v_i.
struct VertexSet {
    int n = 0;
    std::uint64_t mask = 0;

    int size() const { return std::popcount(mask); }
    bool empty() const { return mask == 0; }
    bool contains(int v) const { return (mask >> (v - 1)) & 1u; }
    VertexSet& add(int v) { mask |= std::uint64_t{1} << (v - 1); return *this; }
    VertexSet& remove(int v) { mask &= ~(std::uint64_t{1} << (v - 1)); return *this; }
    bool operator==(const VertexSet&) const = default;

    static VertexSet of(int n, std::initializer_list<int> vs) {
        VertexSet s{n, 0};
        for (int v : vs) s.add(v);
        return s;
    }

    // Index of the computational basis state |v1 v2 ... vn> that encodes the
    // set when v1 is the most significant bit: {v1,v4} of six vertices is
    // |100100> = 36.
    std::uint64_t basis_index() const {
        std::uint64_t b = 0;
        for (int v = 1; v <= n; ++v) b = (b << 1) | (contains(v) ? 1u : 0u);
        return b;
    }

    static VertexSet from_basis_index(int n, std::uint64_t b) {
        VertexSet s{n, 0};
        for (int v = n; v >= 1; --v, b >>= 1)
            if (b & 1u) s.add(v);
        return s;
    }

    std::string to_string() const {
        std::string out = "{";
        for (int v = 1; v <= n; ++v) {
            if (!contains(v)) continue;
            if (out.size() > 1) out += ",";
            out += "v" + std::to_string(v);
        }
        return out + "}";
    }
};

// Simple undirected graph on at most 64 vertices, kept both as adjacency bit
// rows and as a canonically sorted edge list (u < v, lexicographic).
struct Graph {
    int n = 0;
    std::vector<std::uint64_t> adj;          // adj[i] = neighbour bits of v_{i+1}
    std::vector<std::pair<int, int>> edges;

    int m() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const { return (adj[u - 1] >> (v - 1)) & 1u; }
};

// Builds a graph from an edge list, dropping duplicates and normalizing each
// edge to u < v. Self-loops and out-of-range endpoints are programming
// errors here; the parsers report them with line numbers before this runs.
inline Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (n > max_graph_vertices)
        throw limit_error("vertex count " + std::to_string(n) + " exceeds the " +
                          std::to_string(max_graph_vertices) + "-vertex limit");
    Graph g;
    g.n = n;
    g.adj.assign(n, 0);
    for (auto& [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    for (auto [u, v] : g.edges) {
        g.adj[u - 1] |= std::uint64_t{1} << (v - 1);
        g.adj[v - 1] |= std::uint64_t{1} << (u - 1);
    }
    return g;
}

enum class GraphFormat { edge_list, dimacs };

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline long parse_int(const std::string& tok, int lineno, const char* what) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size())
        throw parse_error("line " + std::to_string(lineno) + ": malformed " + what +
                          " '" + tok + "'");
    return value;
}

inline void check_endpoints(long u, long v, long n, int lineno) {
    if (u < 1 || u > n)
        throw parse_error("line " + std::to_string(lineno) + ": vertex " + std::to_string(u) +
                          " out of range 1.." + std::to_string(n));
    if (v < 1 || v > n)
        throw parse_error("line " + std::to_string(lineno) + ": vertex " + std::to_string(v) +
                          " out of range 1.." + std::to_string(n));
    if (u == v)
        throw parse_error("line " + std::to_string(lineno) + ": self-loop " +
                          std::to_string(u) + " " + std::to_string(v));
}

}  // namespace detail

// Edge-list format: first line "n m", then one "u v" line per edge.
// Lines starting with '#' are comments. DIMACS col format: 'c' comment
// lines, one "p edge n m" line, then "e u v" lines.
inline Graph parse_graph(const std::string& text, GraphFormat format) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        if (format == GraphFormat::edge_list && !line.empty() && line[0] == '#') continue;
        if (format == GraphFormat::dimacs && !line.empty() && line[0] == 'c') continue;
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;

        if (format == GraphFormat::edge_list) {
            if (toks.size() != 2)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected two fields, got " + std::to_string(toks.size()));
            long a = detail::parse_int(toks[0], lineno, n < 0 ? "vertex count" : "endpoint");
            long b = detail::parse_int(toks[1], lineno, n < 0 ? "edge count" : "endpoint");
            if (n < 0) {
                n = a;
                m = b;
                if (n < 1) throw parse_error("line " + std::to_string(lineno) + ": vertex count must be positive");
                if (m < 0) throw parse_error("line " + std::to_string(lineno) + ": negative edge count");
                continue;
            }
            detail::check_endpoints(a, b, n, lineno);
            edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        } else {
            if (toks[0] == "p") {
                if (n >= 0) throw parse_error("line " + std::to_string(lineno) + ": duplicate p line");
                if (toks.size() != 4 || toks[1] != "edge")
                    throw parse_error("line " + std::to_string(lineno) + ": expected 'p edge n m'");
                n = detail::parse_int(toks[2], lineno, "vertex count");
                m = detail::parse_int(toks[3], lineno, "edge count");
                if (n < 1) throw parse_error("line " + std::to_string(lineno) + ": vertex count must be positive");
            } else if (toks[0] == "e") {
                if (n < 0) throw parse_error("line " + std::to_string(lineno) + ": edge before p line");
                if (toks.size() != 3)
                    throw parse_error("line " + std::to_string(lineno) + ": expected 'e u v'");
                long a = detail::parse_int(toks[1], lineno, "endpoint");
                long b = detail::parse_int(toks[2], lineno, "endpoint");
                detail::check_endpoints(a, b, n, lineno);
                edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
            } else {
                throw parse_error("line " + std::to_string(lineno) + ": unknown record '" + toks[0] + "'");
            }
        }
    }
    if (n < 0) throw parse_error("empty graph input");
    if (n > max_graph_vertices)
        throw limit_error("vertex count " + std::to_string(n) + " exceeds the " +
                          std::to_string(max_graph_vertices) + "-vertex limit");
    if (m >= 0 && m != static_cast<long>(edges.size()))
        throw parse_error("declared " + std::to_string(m) + " edges but found " +
                          std::to_string(edges.size()));
    return make_graph(static_cast<int>(n), std::move(edges));
}

inline GraphFormat detect_graph_format(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "c" || toks[0] == "p" || toks[0] == "e") return GraphFormat::dimacs;
        return GraphFormat::edge_list;
    }
    return GraphFormat::edge_list;
}

inline std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.n) + " " + std::to_string(g.m()) + "\n";
    for (auto [u, v] : g.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

// FNV-1a over the canonical edge-list text. Ties exported models and run
// manifests back to their input graph.
inline std::uint64_t fingerprint(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : write_edge_list(g)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fingerprint_hex(const Graph& g) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fingerprint(g);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
    return out;
}

inline Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= g.n; ++u)
        for (int v = u + 1; v <= g.n; ++v)
            if (!g.has_edge(u, v)) edges.emplace_back(u, v);
    return make_graph(g.n, std::move(edges));
}

inline int degree(const Graph& g, int v) {
    if (v < 1 || v > g.n) throw std::invalid_argument("vertex out of range");
    return std::popcount(g.adj[v - 1]);
}

// A set S is a k-plex of g when every member is adjacent to at least
// |S| - k members. Sets of size <= k qualify vacuously.
inline bool is_kplex(const Graph& g, const VertexSet& s, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const int size = s.size();
    if (size <= k) return true;
    for (int v = 1; v <= g.n; ++v)
        if (s.contains(v) && std::popcount(g.adj[v - 1] & s.mask) < size - k) return false;
    return true;
}

// Dual form: every member has at most k-1 neighbours inside the set.
// A set is a k-plex of g exactly when it is a k-cplex of the complement.
inline bool is_kcplex(const Graph& g, const VertexSet& s, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    for (int v = 1; v <= g.n; ++v)
        if (s.contains(v) && std::popcount(g.adj[v - 1] & s.mask) > k - 1) return false;
    return true;
}

struct MkpResult {
    int optimum = 0;
    std::vector<VertexSet> witnesses;              // all maximum k-plexes
    std::map<int, std::uint64_t> solution_count_at;  // T -> #k-plexes of size >= T
};

// Exhaustive maximum k-plex reference. Scans all non-empty subsets; the
// limit guards against accidental exponential blowups.
inline MkpResult brute_force_mkp(const Graph& g, int k, int limit = 20) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (g.n > limit)
        throw limit_error("exhaustive search limited to " + std::to_string(limit) +
                          " vertices, graph has " + std::to_string(g.n));
    MkpResult res;
    std::vector<std::uint64_t> by_size(g.n + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << g.n;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        VertexSet s{g.n, mask};
        if (!is_kplex(g, s, k)) continue;
        int size = s.size();
        ++by_size[size];
        if (size > res.optimum) res.optimum = size;
    }
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        VertexSet s{g.n, mask};
        if (s.size() == res.optimum && is_kplex(g, s, k)) res.witnesses.push_back(s);
    }
    std::uint64_t suffix = 0;
    for (int t = g.n; t >= 1; --t) {
        suffix += by_size[t];
        res.solution_count_at[t] = suffix;
    }
    return res;
}

// Uniform random graph with exactly m edges, drawn by a partial
// Fisher-Yates shuffle of all vertex pairs. Same seed, same graph.
inline Graph random_gnm(int n, int m, std::uint64_t seed) {
    if (n < 1 || n > max_graph_vertices) throw std::invalid_argument("vertex count out of range");
    const long max_m = static_cast<long>(n) * (n - 1) / 2;
    if (m < 0 || m > max_m)
        throw std::invalid_argument("edge count " + std::to_string(m) + " out of range 0.." +
                                    std::to_string(max_m));
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(max_m);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    std::mt19937_64 gen(splitmix64(seed));
    for (int i = 0; i < m; ++i) {
        std::size_t j = i + static_cast<std::size_t>(gen() % (pairs.size() - i));
        std::swap(pairs[i], pairs[j]);
    }
    pairs.resize(m);
    return make_graph(n, std::move(pairs));
}

}
