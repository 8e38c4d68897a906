#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qplex/qubo.hpp"
#include "qplex/rng.hpp"

// Simulated-annealing sampler for QuboModel. Each shot starts from a fresh
// random assignment and runs a fixed number of Metropolis sweeps under a
// geometric temperature schedule. Shots draw from independent sub-streams of
// the master seed, so enlarging the shot budget extends a run instead of
// reshuffling it, and the cross-shot reduction is a pure minimum that does
// not depend on evaluation order.

namespace qplex {

struct AnnealConfig {
    int shots = 100;
    int sweeps = 2;
    double t_hot = 0.0;    // 0 means: largest absolute coefficient
    double t_cold = 0.01;
    std::uint64_t seed = 0;
};

// Per-variable coefficient lists, so the cost change of one flip costs
// O(degree) instead of a full model walk.
class FlipTable {
public:
    explicit FlipTable(const QuboModel& m)
        : lin_(m.layout.total, 0.0), adj_(m.layout.total) {
        for (const auto& [v, c] : m.linear) lin_[v] = c;
        for (const auto& [vw, c] : m.quadratic) {
            adj_[vw.first].emplace_back(vw.second, c);
            adj_[vw.second].emplace_back(vw.first, c);
        }
    }

    // cost(a with bit v flipped) - cost(a)
    double delta(const Assignment& a, int v) const {
        double d = lin_[v];
        for (auto [u, c] : adj_[v])
            if (a[u]) d += c;
        return a[v] ? -d : d;
    }

private:
    std::vector<double> lin_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

// cost(a with bit v flipped) - cost(a). One-off convenience over FlipTable;
// hot loops should build the table once instead.
inline double cost_delta(const QuboModel& m, const Assignment& a, int v) {
    if (v < 0 || v >= m.layout.total) throw std::invalid_argument("variable index out of range");
    return FlipTable(m).delta(a, v);
}

struct TrajectoryRow {
    int budget = 0;          // shots consumed so far
    double best_cost = 0.0;  // running minimum over those shots
    int best_size = 0;
    bool feasible = false;
};

struct AnnealReport {
    AnnealConfig config;           // with the resolved hot temperature
    double best_cost = 0.0;
    Assignment best_assignment;
    DecodeResult best;
    bool found_feasible = false;   // some shot decoded to a k-plex
    DecodeResult best_feasible;    // largest such k-plex (then cheapest)
    std::vector<double> shot_costs;
    std::vector<TrajectoryRow> trajectory;
};

namespace detail {

inline double hottest_coefficient(const QuboModel& m) {
    double hot = 0.0;
    for (const auto& [v, c] : m.linear) hot = std::max(hot, std::abs(c));
    for (const auto& [vw, c] : m.quadratic) hot = std::max(hot, std::abs(c));
    return hot;
}

}  // namespace detail

inline AnnealReport anneal(const QuboModel& m, const AnnealConfig& cfg) {
    if (cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (cfg.sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    if (!(cfg.t_cold > 0.0)) throw std::invalid_argument("cold temperature must be positive");
    if (cfg.t_hot != 0.0 && cfg.t_hot < cfg.t_cold)
        throw std::invalid_argument("hot temperature below cold temperature");

    AnnealReport rep;
    rep.config = cfg;
    if (rep.config.t_hot == 0.0)
        rep.config.t_hot = std::max(detail::hottest_coefficient(m), cfg.t_cold);

    const int total = m.layout.total;
    const FlipTable table(m);
    const double ratio = rep.config.t_cold / rep.config.t_hot;
    const int denom = std::max(cfg.sweeps - 1, 1);

    bool have_best = false;
    for (int shot = 0; shot < cfg.shots; ++shot) {
        std::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(shot)));
        // Start from a uniform random vertex subset with its slacks already
        // at their penalty minimum; random slacks would spend the hot sweeps
        // rediscovering values the model can state directly.
        VertexSet start{m.layout.n, 0};
        for (int i = 0; i < m.layout.n; ++i)
            if (gen() & 1u) start.add(i + 1);
        Assignment a = assemble(m, start, optimal_slack(m, start));
        double current = cost(m, a);
        Assignment shot_best = a;
        double shot_best_cost = current;

        for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
            const double temp = rep.config.t_hot * std::pow(ratio, double(sweep) / denom);
            for (int v = 0; v < total; ++v) {
                double d = table.delta(a, v);
                if (d > 0.0 && uniform01(gen) >= std::exp(-d / temp)) continue;
                a[v] ^= 1;
                current += d;
                if (current < shot_best_cost) {
                    shot_best_cost = current;
                    shot_best = a;
                }
            }
        }

        shot_best_cost = cost(m, shot_best);  // drop accumulated float drift
        rep.shot_costs.push_back(shot_best_cost);
        if (!have_best || shot_best_cost < rep.best_cost ||
            (shot_best_cost == rep.best_cost && shot_best < rep.best_assignment)) {
            rep.best_cost = shot_best_cost;
            rep.best_assignment = shot_best;
            have_best = true;
        }
        // Separately keep the largest subset that decodes to a k-plex: a
        // shot can land on the right vertices without settling its slacks,
        // and as a solver answer that subset still counts.
        DecodeResult decoded = decode(m, shot_best);
        if (decoded.feasible &&
            (!rep.found_feasible || decoded.size > rep.best_feasible.size ||
             (decoded.size == rep.best_feasible.size && decoded.cost < rep.best_feasible.cost) ||
             (decoded.size == rep.best_feasible.size && decoded.cost == rep.best_feasible.cost &&
              decoded.subset.mask < rep.best_feasible.subset.mask))) {
            rep.best_feasible = decoded;
            rep.found_feasible = true;
        }
        DecodeResult running = decode(m, rep.best_assignment);
        rep.trajectory.push_back({shot + 1, rep.best_cost, running.size, running.feasible});
    }

    rep.best = decode(m, rep.best_assignment);
    return rep;
}

}
