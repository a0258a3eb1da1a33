#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "peakdiv/prefs.hpp"

namespace peakdiv {

using AgentId = int;

struct Agent {
    AgentId id = 0;
    Preference pref;

    bool operator==(const Agent&) const = default;
};

// A finite set of agents with single-peaked preferences plus a positive
// divisible endowment. Agent order is preserved as given; ids are distinct
// positive integers.
class Economy {
  public:
    Economy(std::vector<Agent> agents, Rat omega)
        : agents_(std::move(agents)), omega_(std::move(omega)) {
        if (agents_.empty()) throw DomainError("economy needs at least one agent");
        if (!(omega_ > 0)) throw DomainError("endowment must be > 0");
        std::vector<AgentId> ids;
        ids.reserve(agents_.size());
        for (const Agent& a : agents_) {
            if (a.id <= 0) throw DomainError("agent ids must be positive integers");
            validate(a.pref);
            ids.push_back(a.id);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw DomainError("agent ids must be distinct");
    }

    const std::vector<Agent>& agents() const { return agents_; }
    const Rat& omega() const { return omega_; }
    std::size_t size() const { return agents_.size(); }

    std::optional<std::size_t> index_of(AgentId id) const {
        for (std::size_t i = 0; i < agents_.size(); ++i)
            if (agents_[i].id == id) return i;
        return std::nullopt;
    }

    const Agent& agent_by_id(AgentId id) const {
        const auto idx = index_of(id);
        if (!idx) throw DomainError("no agent with id " + std::to_string(id));
        return agents_[*idx];
    }

    bool has_agent(AgentId id) const { return index_of(id).has_value(); }

    std::vector<AgentId> ids() const {
        std::vector<AgentId> out;
        out.reserve(agents_.size());
        for (const Agent& a : agents_) out.push_back(a.id);
        return out;
    }

    std::vector<Rat> peaks() const {
        std::vector<Rat> out;
        out.reserve(agents_.size());
        for (const Agent& a : agents_) out.push_back(a.pref.peak);
        return out;
    }

    bool operator==(const Economy&) const = default;

  private:
    std::vector<Agent> agents_;
    Rat omega_;
};

// Nonnegative amounts, one per agent, summing exactly to the endowment.
class Allocation {
  public:
    static Allocation checked(const Economy& econ, std::vector<Rat> amounts) {
        return Allocation(econ.ids(), std::move(amounts), econ.omega());
    }

    Allocation(std::vector<AgentId> ids, std::vector<Rat> amounts, const Rat& omega)
        : ids_(std::move(ids)), amounts_(std::move(amounts)) {
        if (ids_.size() != amounts_.size() || ids_.empty())
            throw DomainError("allocation must cover exactly the economy's agents");
        Rat total = 0;
        for (const Rat& a : amounts_) {
            if (a < 0) throw DomainError("allocation amounts must be >= 0");
            total += a;
        }
        if (total != omega) throw DomainError("allocation must sum exactly to the endowment");
    }

    const std::vector<AgentId>& ids() const { return ids_; }
    const std::vector<Rat>& amounts() const { return amounts_; }
    std::size_t size() const { return ids_.size(); }

    const Rat& for_agent(AgentId id) const {
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (ids_[i] == id) return amounts_[i];
        throw DomainError("allocation has no agent with id " + std::to_string(id));
    }

    bool operator==(const Allocation&) const = default;

  private:
    std::vector<AgentId> ids_;
    std::vector<Rat> amounts_;
};

// Excess demand: sum of peaks minus the endowment. Positive means the agents
// collectively want more than there is; negative means less.
inline Rat excess(const Economy& econ) {
    Rat z = 0;
    for (const Agent& a : econ.agents()) z += a.pref.peak;
    z -= econ.omega();
    return z;
}

// Reduced economy after the agents outside `keep` depart with their
// allotments: kept agents retain their preferences, the endowment becomes
// the total the kept agents received. A reduction whose kept agents received
// nothing has no endowment left to divide and is rejected as degenerate.
inline Economy reduce(const Economy& econ, const std::vector<AgentId>& keep, const Allocation& alloc) {
    if (keep.empty()) throw DomainError("keep set must be nonempty");
    if (alloc.ids() != econ.ids()) throw DomainError("allocation does not belong to this economy");
    std::vector<AgentId> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("keep set has duplicate ids");
    for (AgentId id : sorted)
        if (!econ.has_agent(id)) throw DomainError("keep id " + std::to_string(id) + " not in economy");

    Rat reduced_omega = 0;
    for (AgentId id : keep) reduced_omega += alloc.for_agent(id);
    if (reduced_omega == 0)
        throw DegenerateReductionError("kept agents received a total of zero");

    std::vector<Agent> kept;
    kept.reserve(keep.size());
    for (const Agent& a : econ.agents())
        if (std::binary_search(sorted.begin(), sorted.end(), a.id)) kept.push_back(a);
    return Economy(std::move(kept), std::move(reduced_omega));
}

} // namespace peakdiv
