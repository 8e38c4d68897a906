#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qplex/graph.hpp"

// Penalty-form objective for maximum k-plex over binary vertex variables
// x_i and per-vertex binary slack expansions s_i:
//
//   F = - sum_i x_i
//       + R * sum_i ( sum_{j in comp(i)} x_j + s_i - (k-1) - M_i (1 - x_i) )^2
//
// with M_i = comp_deg(i) - k + 1. Each slack s_i ranges over
// 0 .. max(comp_deg(i), k-1) and gets ceil(log2(max+1)) bits, one more than
// a bound that rounds the power-of-two maxima down and cannot reach them.
// At a penalty-free assignment the x part is a k-plex and the cost is
// exactly minus its size, so minimizing F maximizes the k-plex.

namespace qplex {

using Assignment = std::vector<std::uint8_t>;

struct VarLayout {
    int n = 0;                       // vertex variables occupy 0..n-1
    std::vector<int> slack_bits;     // L_i
    std::vector<int> slack_offset;   // first variable of s_i
    int total = 0;

    int slack_index(int vertex0, int bit) const { return slack_offset[vertex0] + bit; }
    bool is_vertex_var(int v) const { return v < n; }
};

struct QuboModel {
    VarLayout layout;
    double offset = 0.0;
    std::map<int, double> linear;
    std::map<std::pair<int, int>, double> quadratic;  // keys u < v

    int k = 0;
    double r = 0.0;
    std::vector<int> big_m;            // M_i
    Graph original;                    // graph whose k-plexes are sought
    std::vector<std::uint64_t> comp_adj;
    std::string graph_fingerprint;
};

inline int big_m_value(const Graph& g_complement, int vertex, int k) {
    return degree(g_complement, vertex) - k + 1;
}

// bits for one slack: ceil(log2(smax+1)) with smax = max(comp_deg, k-1)
inline int slack_bits(int comp_deg, int k) {
    int smax = std::max(comp_deg, k - 1);
    int w = 0;
    while ((1 << w) <= smax && smax > 0) ++w;
    return w;
}

// ceil(log2(smax)) variant, kept for the growth-table comparison;
// it under-allocates exactly when smax is a power of two
inline int slack_bits_rounded_down(int comp_deg, int k) {
    int smax = std::max(comp_deg, k - 1);
    if (smax <= 1) return 0;
    int w = 0;
    while ((1 << w) < smax) ++w;
    return w;
}

inline QuboModel build_qubo(const Graph& g, int k, double r) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(r > 1.0)) throw std::invalid_argument("penalty weight R must exceed 1");

    QuboModel m;
    m.k = k;
    m.r = r;
    m.original = g;
    m.graph_fingerprint = fingerprint_hex(g);
    Graph gc = complement(g);
    m.comp_adj = gc.adj;

    const int n = g.n;
    m.layout.n = n;
    m.layout.total = n;
    for (int i = 0; i < n; ++i) {
        int deg = degree(gc, i + 1);
        m.big_m.push_back(deg - k + 1);
        m.layout.slack_bits.push_back(slack_bits(deg, k));
        m.layout.slack_offset.push_back(m.layout.total);
        m.layout.total += m.layout.slack_bits.back();
    }

    for (int i = 0; i < n; ++i) m.linear[i] -= 1.0;  // objective part

    for (int i = 0; i < n; ++i) {
        // penalty_i = R (sum of coef*var + c)^2 with c = -comp_deg(i)
        std::vector<std::pair<int, double>> term;
        for (int j = 0; j < n; ++j)
            if ((m.comp_adj[i] >> j) & 1u) term.emplace_back(j, 1.0);
        for (int rbit = 0; rbit < m.layout.slack_bits[i]; ++rbit)
            term.emplace_back(m.layout.slack_index(i, rbit), double(1 << rbit));
        if (m.big_m[i] != 0) term.emplace_back(i, double(m.big_m[i]));
        const double c = -double(degree(gc, i + 1));

        m.offset += r * c * c;
        for (auto [v, a] : term) m.linear[v] += r * (a * a + 2.0 * a * c);
        for (std::size_t p = 0; p < term.size(); ++p)
            for (std::size_t q = p + 1; q < term.size(); ++q) {
                auto [v1, a1] = term[p];
                auto [v2, a2] = term[q];
                m.quadratic[{std::min(v1, v2), std::max(v1, v2)}] += r * 2.0 * a1 * a2;
            }
    }

    std::erase_if(m.linear, [](const auto& e) { return e.second == 0.0; });
    std::erase_if(m.quadratic, [](const auto& e) { return e.second == 0.0; });
    return m;
}

inline double cost(const QuboModel& m, const Assignment& a) {
    if (static_cast<int>(a.size()) != m.layout.total)
        throw std::invalid_argument("assignment length mismatch");
    double c = m.offset;
    for (const auto& [v, w] : m.linear) c += a[v] ? w : 0.0;
    for (const auto& [vw, w] : m.quadratic) c += (a[vw.first] && a[vw.second]) ? w : 0.0;
    return c;
}

// Penalty-minimizing slack values for a fixed vertex subset. Each penalty
// term is independent: the best s_i is the clamp of its exact zero into the
// representable range. Feasible subsets always land inside the range.
inline std::vector<int> optimal_slack(const QuboModel& m, const VertexSet& s) {
    std::vector<int> out;
    for (int i = 0; i < m.layout.n; ++i) {
        int deg_in = std::popcount(m.comp_adj[i] & s.mask);
        int want = s.contains(i + 1) ? (m.k - 1) - deg_in
                                     : (m.k - 1) + m.big_m[i] - deg_in;
        int cap = (1 << m.layout.slack_bits[i]) - 1;
        out.push_back(std::clamp(want, 0, cap));
    }
    return out;
}

inline Assignment assemble(const QuboModel& m, const VertexSet& s, const std::vector<int>& slack) {
    Assignment a(m.layout.total, 0);
    for (int i = 0; i < m.layout.n; ++i) {
        a[i] = s.contains(i + 1) ? 1 : 0;
        for (int rbit = 0; rbit < m.layout.slack_bits[i]; ++rbit)
            a[m.layout.slack_index(i, rbit)] = (slack[i] >> rbit) & 1;
    }
    return a;
}

struct DecodeResult {
    VertexSet subset;
    int size = 0;
    bool feasible = false;   // k-plex check on the original graph
    double cost = 0.0;
    double penalty = 0.0;    // (cost + size) / R, zero iff no constraint broken
};

inline DecodeResult decode(const QuboModel& m, const Assignment& a) {
    DecodeResult d;
    d.subset = VertexSet{m.layout.n, 0};
    for (int i = 0; i < m.layout.n; ++i)
        if (a[i]) d.subset.add(i + 1);
    d.size = d.subset.size();
    d.feasible = is_kplex(m.original, d.subset, m.k);
    d.cost = cost(m, a);
    d.penalty = (d.cost + d.size) / m.r;
    return d;
}

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace detail

// Coordinate text form. "# vars" and "# offset" carry the shape, the other
// comment headers carry enough context to cross-check a reloaded model
// (graph, k, R, slack widths); body lines are "i j c" with i <= j and
// i == j marking a linear term, sorted, one per term.
inline std::string export_qubo(const QuboModel& m) {
    std::string out;
    out += "# vars " + std::to_string(m.layout.total) + "\n";
    out += "# offset " + detail::format_number(m.offset) + "\n";
    out += "# graph " + std::to_string(m.original.n) + " " + std::to_string(m.original.m());
    for (auto [u, v] : m.original.edges) out += " " + std::to_string(u) + "-" + std::to_string(v);
    out += "\n";
    out += "# k " + std::to_string(m.k) + "\n";
    out += "# r " + detail::format_number(m.r) + "\n";
    out += "# slack-bits";
    for (int b : m.layout.slack_bits) out += " " + std::to_string(b);
    out += "\n";
    std::map<std::pair<int, int>, double> all;
    for (const auto& [v, c] : m.linear) all[{v, v}] = c;
    for (const auto& [vw, c] : m.quadratic) all[vw] = c;
    for (const auto& [vw, c] : all)
        out += std::to_string(vw.first) + " " + std::to_string(vw.second) + " " +
               detail::format_number(c) + "\n";
    return out;
}

inline QuboModel parse_qubo(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long vars = -1;
    bool have_offset = false, have_graph = false, have_k = false, have_r = false;
    QuboModel m;
    std::vector<int> slack_bits_list;

    auto fail = [&](const std::string& why) {
        throw parse_error("line " + std::to_string(lineno) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string hash, key;
            ls >> hash >> key;
            if (key == "vars") {
                if (!(ls >> vars) || vars < 0) fail("bad vars header");
            } else if (key == "offset") {
                if (!(ls >> m.offset)) fail("bad offset header");
                have_offset = true;
            } else if (key == "graph") {
                int n = 0, edge_count = 0;
                if (!(ls >> n >> edge_count)) fail("bad graph header");
                std::vector<std::pair<int, int>> edges;
                std::string pair;
                while (ls >> pair) {
                    auto dash = pair.find('-');
                    if (dash == std::string::npos) fail("bad edge token '" + pair + "'");
                    edges.emplace_back(std::stoi(pair.substr(0, dash)), std::stoi(pair.substr(dash + 1)));
                }
                if (static_cast<int>(edges.size()) != edge_count) fail("edge count mismatch");
                m.original = make_graph(n, std::move(edges));
                have_graph = true;
            } else if (key == "k") {
                if (!(ls >> m.k) || m.k < 1) fail("bad k header");
                have_k = true;
            } else if (key == "r") {
                if (!(ls >> m.r)) fail("bad r header");
                have_r = true;
            } else if (key == "slack-bits") {
                int b = 0;
                while (ls >> b) slack_bits_list.push_back(b);
            }
            continue;  // unknown comment keys are ignored
        }
        std::istringstream body(line);
        long i = -1, j = -1;
        double c = 0.0;
        if (!(body >> i >> j >> c)) fail("expected 'i j c'");
        std::string extra;
        if (body >> extra) fail("trailing token '" + extra + "'");
        if (i < 0 || j < i || (vars >= 0 && j >= vars)) fail("variable index out of range");
        if (i == j)
            m.linear[static_cast<int>(i)] += c;
        else
            m.quadratic[{static_cast<int>(i), static_cast<int>(j)}] += c;
    }
    if (vars < 0 || !have_offset) throw parse_error("missing '# vars' or '# offset' header");
    if (!have_graph || !have_k || !have_r || slack_bits_list.empty())
        throw parse_error("missing model headers (graph, k, r, slack-bits)");
    if (static_cast<int>(slack_bits_list.size()) != m.original.n)
        throw parse_error("slack-bits length differs from vertex count");

    m.layout.n = m.original.n;
    m.layout.slack_bits = slack_bits_list;
    m.layout.total = m.layout.n;
    for (int b : slack_bits_list) {
        m.layout.slack_offset.push_back(m.layout.total);
        m.layout.total += b;
    }
    if (m.layout.total != vars) throw parse_error("vars header disagrees with slack-bits");
    Graph gc = complement(m.original);
    m.comp_adj = gc.adj;
    for (int i = 0; i < m.layout.n; ++i) m.big_m.push_back(degree(gc, i + 1) - m.k + 1);
    m.graph_fingerprint = fingerprint_hex(m.original);
    std::erase_if(m.linear, [](const auto& e) { return e.second == 0.0; });
    std::erase_if(m.quadratic, [](const auto& e) { return e.second == 0.0; });
    return m;
}

inline std::string lp_var_name(const VarLayout& lay, int v) {
    if (v < lay.n) return "x" + std::to_string(v);
    for (int i = 0; i < lay.n; ++i)
        if (v >= lay.slack_offset[i] && v < lay.slack_offset[i] + lay.slack_bits[i])
            return "s" + std::to_string(i) + "_" + std::to_string(v - lay.slack_offset[i]);
    throw std::invalid_argument("variable index out of range");
}

/// Linearized form: every quadratic term u*v gets a fresh 0..1 variable
// y_u_v tied to its factors by four constraints. The objective then reads
// offset + linear terms + quadratic coefficients on the y variables.
inline std::string export_lp(const QuboModel& m) {
    std::string obj = " obj:";
    bool first = true;
    auto add_term = [&](double c, const std::string& name) {
        std::string mag = detail::format_number(std::abs(c));
        obj += (c < 0 ? (first ? " -" : " - ") : (first ? " " : " + ")) + mag;
        if (!name.empty()) obj += " " + name;
        first = false;
    };
    for (const auto& [v, c] : m.linear) add_term(c, lp_var_name(m.layout, v));
    for (const auto& [vw, c] : m.quadratic)
        add_term(c, "y" + std::to_string(vw.first) + "_" + std::to_string(vw.second));
    if (m.offset != 0.0 || first) add_term(m.offset, "");

    std::string out = "\\ qubo linearization, " + std::to_string(m.layout.total) +
                      " binary variables, fingerprint " + m.graph_fingerprint + "\n";
    out += "Minimize\n" + obj + "\n";
    out += "Subject To\n";
    if (m.quadratic.empty())  // some LP readers insist on a constraint
        out += " c0: " + lp_var_name(m.layout, 0) + " >= 0\n";
    int cid = 0;
    for (const auto& [vw, c] : m.quadratic) {
        std::string y = "y" + std::to_string(vw.first) + "_" + std::to_string(vw.second);
        std::string xu = lp_var_name(m.layout, vw.first);
        std::string xv = lp_var_name(m.layout, vw.second);
        out += " c" + std::to_string(cid++) + ": " + y + " - " + xu + " <= 0\n";
        out += " c" + std::to_string(cid++) + ": " + y + " - " + xv + " <= 0\n";
        out += " c" + std::to_string(cid++) + ": " + y + " - " + xu + " - " + xv + " >= -1\n";
        out += " c" + std::to_string(cid++) + ": " + y + " >= 0\n";
    }
    out += "Binary\n";
    for (int v = 0; v < m.layout.total; ++v) out += " " + lp_var_name(m.layout, v) + "\n";
    out += "End\n";
    return out;
}

}
