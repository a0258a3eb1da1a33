#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peakdiv/economy.hpp"
#include "peakdiv/solver.hpp"

namespace peakdiv {

enum class RuleName { Uniform, EqualDivision, SerialDictatorFixed, PhiBar, PhiStar };

// Named deterministic rule. `order` applies to serial_dictator_fixed only:
// it is a fixed priority list over agent ids, applied to an economy by
// restriction; when absent the ascending id order is used.
struct RuleDescriptor {
    RuleName name = RuleName::Uniform;
    std::optional<std::vector<AgentId>> order;
};

inline std::optional<RuleName> parse_rule_name(std::string_view s) {
    if (s == "uniform") return RuleName::Uniform;
    if (s == "equal_division") return RuleName::EqualDivision;
    if (s == "serial_dictator" || s == "serial_dictator_fixed") return RuleName::SerialDictatorFixed;
    if (s == "phi_bar") return RuleName::PhiBar;
    if (s == "phi_star") return RuleName::PhiStar;
    return std::nullopt;
}

inline std::string rule_name_string(RuleName n) {
    switch (n) {
        case RuleName::Uniform: return "uniform";
        case RuleName::EqualDivision: return "equal_division";
        case RuleName::SerialDictatorFixed: return "serial_dictator_fixed";
        case RuleName::PhiBar: return "phi_bar";
        case RuleName::PhiStar: return "phi_star";
    }
    return "?";
}

// Uniform rule: everyone gets min(peak, lambda) under excess demand and
// max(peak, lambda) under excess supply, with lambda set by feasibility.
inline Allocation uniform_rule(const Economy& econ) {
    const Rat z = excess(econ);
    std::vector<Rat> out;
    out.reserve(econ.size());
    if (z >= 0) {
        const Rat lambda = solve_lambda_demand(econ.peaks(), econ.omega());
        for (const Agent& a : econ.agents()) out.push_back(std::min(a.pref.peak, lambda));
    } else {
        const Rat lambda = solve_lambda_supply(econ.peaks(), econ.omega());
        for (const Agent& a : econ.agents()) out.push_back(std::max(a.pref.peak, lambda));
    }
    return Allocation::checked(econ, std::move(out));
}

inline Allocation equal_division_rule(const Economy& econ) {
    const Rat share = econ.omega() / Rat(static_cast<unsigned long>(econ.size()));
    std::vector<Rat> out(econ.size(), share);
    return Allocation::checked(econ, std::move(out));
}

// Agents take turns in `order`: each takes the closest feasible amount to
// its peak, i.e. min(peak, remaining); the final agent absorbs whatever is
// left, which keeps the rule total in excess supply. In excess demand the
// remainder at the final agent never exceeds that agent's peak.
inline Allocation serial_dictator_rule(const Economy& econ, const std::vector<AgentId>& order) {
    if (order.size() != econ.size()) throw OrderMismatchError("order must list every agent exactly once");
    std::vector<AgentId> a = order, b = econ.ids();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw OrderMismatchError("order is not a permutation of the economy's agents");

    std::vector<Rat> amounts(econ.size(), Rat(0));
    Rat remaining = econ.omega();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t idx = *econ.index_of(order[i]);
        if (i + 1 == order.size()) {
            amounts[idx] = remaining;
            remaining = 0;
        } else {
            Rat take = std::min(econ.agents()[idx].pref.peak, remaining);
            remaining -= take;
            amounts[idx] = std::move(take);
        }
    }
    return Allocation::checked(econ, std::move(amounts));
}

inline std::vector<AgentId> ascending_id_order(const Economy& econ) {
    std::vector<AgentId> order = econ.ids();
    std::sort(order.begin(), order.end());
    return order;
}

// Order by increasing peak, ties broken by ascending id.
inline std::vector<AgentId> increasing_peak_order(const Economy& econ) {
    std::vector<AgentId> order = econ.ids();
    std::sort(order.begin(), order.end(), [&](AgentId x, AgentId y) {
        const Rat& px = econ.agent_by_id(x).pref.peak;
        const Rat& py = econ.agent_by_id(y).pref.peak;
        if (px != py) return px < py;
        return x < y;
    });
    return order;
}

inline bool phi_bar_special_case(const Economy& econ) {
    if (econ.size() < 2) return false;
    std::vector<AgentId> ids = ascending_id_order(econ);
    if (econ.agent_by_id(ids[0]).pref.peak != econ.omega()) return false;
    if (econ.agent_by_id(ids[1]).pref.peak != econ.omega()) return false;
    for (std::size_t i = 2; i < ids.size(); ++i)
        if (econ.agent_by_id(ids[i]).pref.peak != 0) return false;
    return true;
}

// Uniform rule patched on one family of profiles: when the two lowest-id
// agents both peak at the whole endowment and everyone else peaks at zero,
// hand out (omega/3, 2*omega/3, 0, ..., 0) by id order instead.
inline Allocation phi_bar_rule(const Economy& econ) {
    if (!phi_bar_special_case(econ)) return uniform_rule(econ);
    std::vector<AgentId> ids = ascending_id_order(econ);
    std::vector<Rat> amounts(econ.size(), Rat(0));
    amounts[*econ.index_of(ids[0])] = econ.omega() / 3;
    amounts[*econ.index_of(ids[1])] = econ.omega() * 2 / 3;
    return Allocation::checked(econ, std::move(amounts));
}

// Serial dictator in increasing-peak order under excess demand, uniform rule
// otherwise.
inline Allocation phi_star_rule(const Economy& econ) {
    if (excess(econ) > 0) return serial_dictator_rule(econ, increasing_peak_order(econ));
    return uniform_rule(econ);
}

inline Allocation apply_rule(const RuleDescriptor& desc, const Economy& econ) {
    switch (desc.name) {
        case RuleName::Uniform: return uniform_rule(econ);
        case RuleName::EqualDivision: return equal_division_rule(econ);
        case RuleName::SerialDictatorFixed: {
            if (!desc.order) return serial_dictator_rule(econ, ascending_id_order(econ));
            std::vector<AgentId> restricted;
            for (AgentId id : *desc.order)
                if (econ.has_agent(id)) restricted.push_back(id);
            return serial_dictator_rule(econ, restricted);
        }
        case RuleName::PhiBar: return phi_bar_rule(econ);
        case RuleName::PhiStar: return phi_star_rule(econ);
    }
    throw DomainError("unknown rule");
}

} // namespace peakdiv
