#pragma once

#include <random>
#include <vector>

#include "peakdiv/economy.hpp"

namespace peakdiv {

// Seeded generators for randomized suites. Everything is drawn from small
// rational lattices so the exact kernel is exercised without denominator
// blowup.

inline Rat random_fraction(std::mt19937_64& rng, bool include_one = true) {
    static const int dens[] = {1, 2, 3, 4, 5, 8, 10, 16};
    const int d = dens[std::uniform_int_distribution<int>(0, 7)(rng)];
    const int k = std::uniform_int_distribution<int>(0, include_one ? d : d - 1)(rng);
    return Rat(k, d);
}

struct RandomEconomyConfig {
    std::size_t n_min = 1;
    std::size_t n_max = 6;
    std::vector<Rat> omegas{Rat(1), Rat(3), Rat(9)};
    double edg_anchor_prob = 0.25; // chance to pin one peak to omega/n
    double sparse_id_prob = 0.25;  // chance to use non-contiguous agent ids
    Rat peak_span = Rat(3, 2);     // peaks drawn from [0, peak_span * omega]
};

inline Preference random_preference(std::mt19937_64& rng, const Rat& max_peak) {
    static const Rat slopes[] = {Rat(1), Rat(2), Rat(1, 2)};
    Preference p;
    Rat peak = random_fraction(rng) * max_peak;
    p.peak = std::move(peak);
    p.slope_left = slopes[std::uniform_int_distribution<int>(0, 2)(rng)];
    p.slope_right = slopes[std::uniform_int_distribution<int>(0, 2)(rng)];
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.2)
        p.jump_left = Rat(1, 2);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.2)
        p.jump_right = Rat(1, 2);
    return p;
}

inline Economy random_economy(std::mt19937_64& rng, const RandomEconomyConfig& cfg) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw DomainError("bad agent-count range");
    if (cfg.omegas.empty()) throw DomainError("need at least one endowment choice");
    const std::size_t n =
        std::uniform_int_distribution<std::size_t>(cfg.n_min, cfg.n_max)(rng);
    const Rat omega = cfg.omegas[std::uniform_int_distribution<std::size_t>(0, cfg.omegas.size() - 1)(rng)];

    std::vector<AgentId> ids;
    if (std::uniform_real_distribution<double>(0, 1)(rng) < cfg.sparse_id_prob) {
        AgentId next = 1;
        while (ids.size() < n) {
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) ids.push_back(next);
            ++next;
        }
    } else {
        for (std::size_t i = 1; i <= n; ++i) ids.push_back(static_cast<AgentId>(i));
    }

    const Rat max_peak = cfg.peak_span * omega;
    std::vector<Agent> agents;
    agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        agents.push_back(Agent{ids[i], random_preference(rng, max_peak)});
    if (std::uniform_real_distribution<double>(0, 1)(rng) < cfg.edg_anchor_prob) {
        const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        agents[pick].pref.peak = omega / Rat(static_cast<unsigned long>(n));
    }
    return Economy(std::move(agents), omega);
}

// Random nonempty proper subset of the economy's agents.
inline std::vector<AgentId> random_proper_subset(std::mt19937_64& rng, const Economy& econ) {
    const std::vector<AgentId> ids = econ.ids();
    if (ids.size() < 2) throw DomainError("no proper subsets for a singleton economy");
    std::vector<AgentId> out;
    while (out.empty() || out.size() == ids.size()) {
        out.clear();
        for (AgentId id : ids)
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) out.push_back(id);
    }
    return out;
}

} // namespace peakdiv
