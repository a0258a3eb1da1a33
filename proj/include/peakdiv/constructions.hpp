#pragma once

#include <optional>
#include <vector>

#include "peakdiv/axioms.hpp"

namespace peakdiv {

// Executable forms of the uniqueness argument's three steps: rather than
// proving anything symbolically, each step builds the concrete economies the
// argument uses and checks the displayed (in)equalities numerically, in
// exact arithmetic.

// --- step 1: everybody at or above the equal split gets exactly the split ---

struct Step1Result {
    Status status = Status::Pass;
    Allocation allocation;
    Rat share;
    std::optional<AgentId> offender;
};

// Precondition: excess demand (z >= 0) and every peak >= omega/n. A rule
// satisfying the four audited axioms must return equal division here.
inline Step1Result step1_check(const RuleDescriptor& rule, const Economy& econ) {
    const Rat share = econ.omega() / Rat(static_cast<unsigned long>(econ.size()));
    if (excess(econ) < 0) throw DomainError("step 1 requires excess demand");
    for (const Agent& a : econ.agents())
        if (a.pref.peak < share) throw DomainError("step 1 requires every peak >= omega/n");

    Step1Result res{Status::Pass, apply_rule(rule, econ), share, std::nullopt};
    for (const Agent& a : econ.agents()) {
        if (res.allocation.for_agent(a.id) != share) {
            res.status = Status::Fail;
            res.offender = a.id;
            break;
        }
    }
    return res;
}

// --- step 2: economy augmentation -------------------------------------------

// Smallest positive integer k with k * (p_i - gamma) > omega - n * p_i.
// Requires 0 < gamma < p_i <= omega/n.
inline Int step2_choose_k(const Rat& p_i, const Rat& gamma, std::size_t n, const Rat& omega) {
    if (!(gamma > 0) || !(gamma < p_i)) throw DomainError("need 0 < gamma < p_i");
    if (!(p_i * Rat(static_cast<unsigned long>(n)) <= omega))
        throw DomainError("need p_i <= omega/n");
    const Rat d = p_i - gamma;
    const Rat r = omega - Rat(static_cast<unsigned long>(n)) * p_i;
    if (r < 0) return 1;
    Int k = rat_floor(r / d) + 1;
    if (k < 1) k = 1;
    return k;
}

struct Step2Certificate {
    Int k;
    Rat gamma;
    Rat omega_star;
    Rat target; // omega_star / (n + k), the fresh agents' escape peak
    bool eq1 = false;            // k (p_i - gamma) > omega - n p_i
    bool eq2 = false;            // gamma = (n+k)gamma/(n+k) < (omega + k gamma)/(n+k)
    bool eq3 = false;            // gamma < target < p_i
    bool excess_positive = false; // augmented economy still has excess demand
    bool eq4_sample = false;     // target preferred to each sampled x in (0, gamma)
    std::size_t eq4_points = 200;
    std::vector<AgentId> fresh_ids;

    bool all_hold() const { return eq1 && eq2 && eq3 && excess_positive && eq4_sample; }
};

struct Step2Build {
    Economy economy;
    Step2Certificate certificate;
    AgentId agent;
    Rat p_i;
};

// Augment the economy for agent i: add the smallest admissible number k of
// fresh agents, each with peak gamma and a preference that ranks the future
// equal split omega*/(n+k) above everything in (0, gamma); the endowment
// grows to omega* = omega + k*gamma. The certificate records each displayed
// inequality, evaluated exactly.
inline Step2Build build_step2_economy(const Economy& econ, AgentId agent, const Rat& gamma,
                                      const Int& k_cap = Int(1'000'000)) {
    if (!(excess(econ) > 0)) throw DomainError("step 2 requires excess demand");
    const Agent& who = econ.agent_by_id(agent);
    const Rat& p_i = who.pref.peak;
    const std::size_t n = econ.size();
    const Rat share = econ.omega() / Rat(static_cast<unsigned long>(n));
    if (!(p_i <= share)) throw DomainError("step 2 requires p_i <= omega/n");
    if (!(gamma > 0) || !(gamma < p_i)) throw DomainError("need 0 < gamma < p_i");

    const Int k = step2_choose_k(p_i, gamma, n, econ.omega());
    if (k > k_cap)
        throw BudgetExceededError("step 2 needs k = " + k.str() + " fresh agents, cap is " +
                                  k_cap.str());

    Step2Certificate cert;
    cert.k = k;
    cert.gamma = gamma;
    const Rat k_rat(k);
    const Rat nk = Rat(static_cast<unsigned long>(n)) + k_rat;
    cert.omega_star = econ.omega() + k_rat * gamma;
    cert.target = cert.omega_star / nk;

    cert.eq1 = k_rat * (p_i - gamma) > econ.omega() - Rat(static_cast<unsigned long>(n)) * p_i;
    cert.eq2 = (nk * gamma) / nk < cert.target;
    cert.eq3 = gamma < cert.target && cert.target < p_i;
    if (!cert.eq3)
        throw DomainError("internal: gamma < omega*/(n+k) < p_i must hold under the preconditions");

    AgentId next_id = 0;
    for (AgentId id : econ.ids()) next_id = std::max(next_id, id);
    ++next_id;

    const Preference fresh = make_step2_preference(gamma, cert.target);
    std::vector<Agent> agents = econ.agents();
    const long k_long = k.convert_to<long>();
    for (long j = 0; j < k_long; ++j) {
        agents.push_back(Agent{next_id, fresh});
        cert.fresh_ids.push_back(next_id);
        ++next_id;
    }
    Economy augmented(std::move(agents), cert.omega_star);
    cert.excess_positive = excess(augmented) > 0;

    cert.eq4_sample = true;
    for (std::size_t j = 1; j <= cert.eq4_points; ++j) {
        const Rat x = gamma * Rat(static_cast<unsigned long>(j)) /
                      Rat(static_cast<unsigned long>(cert.eq4_points + 1));
        if (!strictly_prefers(fresh, cert.target, x)) {
            cert.eq4_sample = false;
            break;
        }
    }

    return Step2Build{std::move(augmented), std::move(cert), agent, p_i};
}

// Midpoint of (lambda, p_i) where lambda is the rule's allotment to i; when
// the rule already awards the peak, the midpoint of (0, p_i) keeps the
// builder exercisable in certificate mode.
inline Rat step2_default_gamma(const Economy& econ, AgentId agent, const RuleDescriptor& rule) {
    const Rat& p_i = econ.agent_by_id(agent).pref.peak;
    const Rat lambda = apply_rule(rule, econ).for_agent(agent);
    if (lambda < p_i) return (lambda + p_i) / 2;
    return p_i / 2;
}

// --- step 3: departure chain --------------------------------------------------

struct Step3Stage {
    std::size_t index = 0;
    AgentId removed = 0;
    Rat omega_t;
    std::size_t n_t = 0;
    Rat excess_t;
    Rat stage_share; // omega_t / n_t
    Rat stage_value; // min/max(peak, stage_share) by regime
    Rat allotment;   // the departing agent's amount in the original allocation
    bool eq1 = false; // rule on the current economy reproduces the original allotments
    bool eq2 = false; // allotment equals the stage formula
    bool vacuous = false;
};

struct Step3Trace {
    Allocation original;
    std::vector<Step3Stage> stages;
    bool pass = true;
    std::uint64_t vacuous = 0;
};

// Let agents depart one by one with their original allotments -- smallest
// peak first under excess demand, largest first under excess supply -- and
// after each departure re-apply the rule to the reduced economy. Each stage
// checks that the rule still awards everyone their original amount and that
// the departing agent's allotment matches the uniform formula
// min/max(peak, omega_t/n_t) for the extreme peak. A reduction with nothing
// left to divide is recorded as vacuous and ends the chain (the remaining
// allotments are all zero by feasibility).
inline Step3Trace step3_departure_chain(const RuleDescriptor& rule, const Economy& econ) {
    Step3Trace trace{apply_rule(rule, econ), {}, true, 0};
    Economy current = econ;
    std::size_t index = 0;
    while (true) {
        const Allocation y = apply_rule(rule, current);
        Step3Stage st;
        st.index = index;
        st.omega_t = current.omega();
        st.n_t = current.size();
        st.excess_t = excess(current);
        st.eq1 = true;
        for (AgentId id : current.ids())
            if (y.for_agent(id) != trace.original.for_agent(id)) st.eq1 = false;

        const bool demand = st.excess_t >= 0;
        AgentId rm = current.agents().front().id;
        for (const Agent& a : current.agents()) {
            const Rat& pa = a.pref.peak;
            const Rat& pr = current.agent_by_id(rm).pref.peak;
            const bool better = demand ? (pa < pr || (pa == pr && a.id < rm))
                                       : (pa > pr || (pa == pr && a.id < rm));
            if (better) rm = a.id;
        }
        st.removed = rm;
        st.stage_share = current.omega() / Rat(static_cast<unsigned long>(current.size()));
        const Rat& p_rm = current.agent_by_id(rm).pref.peak;
        st.stage_value = demand ? std::min(p_rm, st.stage_share) : std::max(p_rm, st.stage_share);
        st.allotment = trace.original.for_agent(rm);
        st.eq2 = st.allotment == st.stage_value;
        if (!st.eq1 || !st.eq2) trace.pass = false;
        trace.stages.push_back(st);

        if (current.size() == 1) break;

        std::vector<AgentId> keep;
        for (AgentId id : current.ids())
            if (id != rm) keep.push_back(id);
        std::vector<Rat> amounts;
        amounts.reserve(current.size());
        for (AgentId id : current.ids()) amounts.push_back(trace.original.for_agent(id));
        const Allocation restricted(current.ids(), std::move(amounts), current.omega());
        try {
            current = reduce(current, keep, restricted);
        } catch (const DegenerateReductionError&) {
            for (AgentId id : keep) {
                Step3Stage rest;
                rest.index = ++index;
                rest.removed = id;
                rest.omega_t = 0;
                rest.n_t = keep.size();
                rest.allotment = trace.original.for_agent(id);
                rest.vacuous = true;
                trace.stages.push_back(std::move(rest));
                ++trace.vacuous;
            }
            break;
        }
        ++index;
    }
    return trace;
}

} // namespace peakdiv
