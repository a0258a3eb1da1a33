#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peakdiv/rules.hpp"

namespace peakdiv {

// Slope/jump variant used when materializing grid preferences.
struct PrefShape {
    Rat slope_left = 1;
    Rat slope_right = 1;
    Rat jump_left = 0;
    Rat jump_right = 0;

    bool operator==(const PrefShape&) const = default;
};

// Finite family of preferences: the cartesian product of a peak grid and a
// shape grid.
struct PrefGrid {
    std::vector<Rat> peaks;
    std::vector<PrefShape> shapes{PrefShape{}};

    std::vector<Preference> materialize() const {
        std::vector<Preference> out;
        out.reserve(peaks.size() * shapes.size());
        for (const Rat& p : peaks)
            for (const PrefShape& s : shapes)
                out.push_back(make_preference(p, s.slope_left, s.slope_right, s.jump_left, s.jump_right));
        return out;
    }
};

// Finite surrogate for the space of opponent profiles: every opponent's
// preference ranges over the same peak x shape grid.
struct ProfileGrid {
    PrefGrid prefs;
    std::size_t n_opponents = 0;
    std::uint64_t budget = 1'000'000;

    std::string descriptor() const {
        std::ostringstream os;
        os << "grid(peaks=" << prefs.peaks.size() << ",shapes=" << prefs.shapes.size()
           << ",opponents=" << n_opponents << ")";
        return os.str();
    }
};

// The amounts an agent can be handed under a fixed own report as the
// opponents' reports range over a domain: either a closed interval (analytic
// formula) or a finite, sorted sample set (grid enumeration).
struct OptionSet {
    enum class Kind { Interval, Samples };

    Kind kind = Kind::Interval;
    Rat lo, hi;               // kind == Interval
    std::vector<Rat> samples; // kind == Samples, sorted and deduplicated
    Rat omega;
    std::string provenance;

    static OptionSet interval(Rat lo, Rat hi, Rat omega, std::string provenance = "analytic") {
        if (!(lo <= hi)) throw DomainError("option-set interval needs lo <= hi");
        if (lo < 0 || hi > omega) throw DomainError("option set must lie within [0, omega]");
        OptionSet o;
        o.kind = Kind::Interval;
        o.lo = std::move(lo);
        o.hi = std::move(hi);
        o.omega = std::move(omega);
        o.provenance = std::move(provenance);
        return o;
    }

    static OptionSet from_samples(std::vector<Rat> samples, Rat omega, std::string provenance) {
        if (samples.empty()) throw DomainError("option set must be nonempty");
        std::sort(samples.begin(), samples.end());
        samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
        if (samples.front() < 0 || samples.back() > omega)
            throw DomainError("option set must lie within [0, omega]");
        OptionSet o;
        o.kind = Kind::Samples;
        o.samples = std::move(samples);
        o.omega = std::move(omega);
        o.provenance = std::move(provenance);
        return o;
    }

    const Rat& min() const { return kind == Kind::Interval ? lo : samples.front(); }
    const Rat& max() const { return kind == Kind::Interval ? hi : samples.back(); }
};

// Option set of the uniform rule, from the closed-form interval: with n
// agents and own peak p, the attainable amounts are [omega/n, p] when
// p > omega/n and [p, omega/n] otherwise. Peaks above omega are capped at
// omega since no allocation can hand out more than the endowment. A sole
// agent always receives omega.
inline OptionSet uniform_option_set(const Preference& pref, const Rat& omega, std::size_t n) {
    if (n == 0) throw DomainError("need at least one agent");
    if (!(omega > 0)) throw DomainError("endowment must be > 0");
    if (n == 1) return OptionSet::interval(omega, omega, omega);
    const Rat share = omega / Rat(static_cast<unsigned long>(n));
    const Rat p = std::min(pref.peak, omega);
    if (p > share) return OptionSet::interval(share, p, omega);
    return OptionSet::interval(p, share, omega);
}

// Deterministic opponent ids: the smallest positive integers distinct from
// the reporting agent's id. Tie-breaking rules (phi_star, phi_bar) therefore
// see the reporting agent in the position its id implies.
inline std::vector<AgentId> opponent_ids(AgentId agent, std::size_t count) {
    std::vector<AgentId> out;
    AgentId next = 1;
    while (out.size() < count) {
        if (next != agent) out.push_back(next);
        ++next;
    }
    return out;
}

namespace detail {

// Odometer over per-opponent indices in [0, base)^k; returns false when it
// wraps around.
inline bool next_profile(std::vector<std::size_t>& digits, std::size_t base) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < base) return true;
        digits[i] = 0;
    }
    return false;
}

} // namespace detail

// Enumerated option set: apply the rule at every opponent profile in the
// grid and collect the reporting agent's amounts.
inline OptionSet sampled_option_set(const RuleDescriptor& rule, AgentId agent, const Preference& pref_i,
                                    const Rat& omega, const ProfileGrid& grid) {
    if (!(omega > 0)) throw DomainError("endowment must be > 0");
    if (grid.prefs.peaks.empty() || grid.prefs.shapes.empty())
        throw DomainError("profile grid must be nonempty");
    const std::vector<Preference> menu = grid.prefs.materialize();
    const std::size_t base = menu.size();

    Int combos = 1;
    for (std::size_t i = 0; i < grid.n_opponents; ++i) {
        combos *= static_cast<unsigned long>(base);
        if (combos > grid.budget)
            throw BudgetExceededError("profile enumeration larger than budget " +
                                      std::to_string(grid.budget));
    }

    const std::vector<AgentId> opponents = opponent_ids(agent, grid.n_opponents);
    std::set<Rat> values;
    std::vector<std::size_t> digits(grid.n_opponents, 0);
    do {
        std::vector<Agent> agents;
        agents.reserve(grid.n_opponents + 1);
        for (std::size_t j = 0; j < grid.n_opponents; ++j)
            agents.push_back(Agent{opponents[j], menu[digits[j]]});
        agents.push_back(Agent{agent, pref_i});
        std::sort(agents.begin(), agents.end(),
                  [](const Agent& a, const Agent& b) { return a.id < b.id; });
        const Economy econ(std::move(agents), omega);
        values.insert(apply_rule(rule, econ).for_agent(agent));
    } while (detail::next_profile(digits, base));

    return OptionSet::from_samples(std::vector<Rat>(values.begin(), values.end()), omega,
                                   "enumerated:" + grid.descriptor());
}

// A point of the option set with maximal disutility. For an interval this is
// an endpoint: on each side of the peak the disutility branch is linear and
// strictly worsens away from the peak, and a side jump only adds a constant
// to that branch, so the supremum over a closed interval is
// max(d(lo), d(hi)) and is attained.
inline Rat worst_point(const OptionSet& oset, const Preference& pref) {
    if (oset.kind == OptionSet::Kind::Interval) {
        if (disutility(pref, oset.lo) >= disutility(pref, oset.hi)) return oset.lo;
        return oset.hi;
    }
    const Rat* worst = &oset.samples.front();
    Rat worst_d = disutility(pref, *worst);
    for (const Rat& x : oset.samples) {
        Rat d = disutility(pref, x);
        if (d > worst_d) {
            worst = &x;
            worst_d = std::move(d);
        }
    }
    return *worst;
}

} // namespace peakdiv
