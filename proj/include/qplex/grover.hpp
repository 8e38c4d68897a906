#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qplex/errors.hpp"
#include "qplex/rng.hpp"

// Dense statevector simulation of search by amplitude amplification over n
// query bits: uniform start, sign flip on marked basis states, inversion
// about the mean, repeated floor(pi/4 sqrt(N/M)) times. Amplitudes stay real
// throughout, but the vector is complex so the code says what it simulates.

namespace qplex {

inline constexpr int default_sim_limit = 24;

using AmplitudeVector = std::vector<std::complex<double>>;

struct GroverSchedule {
    int n = 0;
    std::uint64_t basis_size = 0;  // N = 2^n
    std::uint64_t marked = 0;      // M
    double theta = 0.0;            // asin(sqrt(M/N))
    int iterations = 0;            // floor(pi/4 sqrt(N/M)), 0 when M == 0
};

struct Snapshot {
    int iteration = 0;                   // 0 is the uniform start
    std::vector<double> probabilities;   // |amp|^2 per basis state
};

struct GroverResult {
    GroverSchedule schedule;
    std::vector<Snapshot> snapshots;     // one per iteration, 0..I
    std::map<std::uint64_t, std::uint64_t> histogram;  // basis -> shot count
    double success_frequency = 0.0;      // fraction of shots on marked states
    AmplitudeVector final_amplitudes;
};

inline AmplitudeVector uniform_state(int n, int sim_limit = default_sim_limit) {
    if (n < 1) throw std::invalid_argument("need at least one query bit");
    if (n > sim_limit)
        throw limit_error("statevector of " + std::to_string(n) + " bits exceeds the " +
                          std::to_string(sim_limit) + "-bit simulation limit");
    const std::uint64_t size = std::uint64_t{1} << n;
    return AmplitudeVector(size, std::complex<double>(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
}

inline void apply_phase_oracle(AmplitudeVector& amps, const std::vector<bool>& marked) {
    if (marked.size() != amps.size()) throw std::invalid_argument("marked bitmap size mismatch");
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (marked[i]) amps[i] = -amps[i];
}

// inversion about the mean: a -> 2 mean(a) - a
inline void diffusion(AmplitudeVector& amps) {
    std::complex<double> mean(0.0, 0.0);
    for (const auto& a : amps) mean += a;
    mean /= static_cast<double>(amps.size());
    for (auto& a : amps) a = 2.0 * mean - a;
}

inline int optimal_iterations(int n, std::uint64_t m_marked) {
    if (m_marked == 0) return 0;  // nothing to amplify
    const double ratio = static_cast<double>(std::uint64_t{1} << n) / static_cast<double>(m_marked);
    return static_cast<int>(std::floor(std::atan(1.0) * std::sqrt(ratio)));  // pi/4 sqrt(N/M)
}

inline double success_probability(const AmplitudeVector& amps, const std::vector<bool>& marked) {
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (marked[i]) p += std::norm(amps[i]);
    return p;
}

inline GroverSchedule make_schedule(int n, std::uint64_t m_marked) {
    GroverSchedule s;
    s.n = n;
    s.basis_size = std::uint64_t{1} << n;
    s.marked = m_marked;
    s.theta = std::asin(std::sqrt(static_cast<double>(m_marked) / static_cast<double>(s.basis_size)));
    s.iterations = optimal_iterations(n, m_marked);
    return s;
}

// Full run: amplify, snapshot the probabilities after every iteration, then
// draw `shots` measurements by inverse-CDF sampling.
inline GroverResult grover_run(int n, const std::vector<bool>& marked, std::uint64_t shots,
                               std::uint64_t seed, int sim_limit = default_sim_limit) {
    AmplitudeVector amps = uniform_state(n, sim_limit);
    if (marked.size() != amps.size()) throw std::invalid_argument("marked bitmap size mismatch");

    GroverResult res;
    std::uint64_t m_marked = 0;
    for (bool b : marked)
        if (b) ++m_marked;
    res.schedule = make_schedule(n, m_marked);

    auto snapshot = [&](int iter) {
        Snapshot s{iter, {}};
        s.probabilities.reserve(amps.size());
        for (const auto& a : amps) s.probabilities.push_back(std::norm(a));
        res.snapshots.push_back(std::move(s));
    };
    snapshot(0);
    for (int j = 1; j <= res.schedule.iterations; ++j) {
        apply_phase_oracle(amps, marked);
        diffusion(amps);
        snapshot(j);
    }

    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 gen(derive_seed(seed, 0x73616d70ull));  // sampling stream
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = uniform01(gen) * acc;
        std::size_t idx = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (idx >= amps.size()) idx = amps.size() - 1;
        ++res.histogram[idx];
        if (marked[idx]) ++hits;
    }
    res.success_frequency = shots ? static_cast<double>(hits) / static_cast<double>(shots) : 0.0;
    res.final_amplitudes = std::move(amps);
    return res;
}

}
