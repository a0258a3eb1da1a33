#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "peakdiv/rational.hpp"

namespace peakdiv {

// Exact water-filling level for the rationing side: the lambda >= 0 with
//   sum_j min(p_j, lambda) = omega.
// Requires sum p >= omega > 0. F is piecewise linear in lambda with
// breakpoints at the sorted peaks; with the k smallest peaks saturated,
// F(lambda) = prefix_k + (n - k) * lambda. When sum p == omega every
// lambda >= max p solves the equation; the canonical report is max p, which
// makes min(p_j, lambda) = p_j exactly.
inline Rat solve_lambda_demand(std::vector<Rat> peaks, const Rat& omega) {
    if (peaks.empty()) throw DomainError("need at least one peak");
    if (!(omega > 0)) throw DomainError("endowment must be > 0");
    Rat total = 0;
    for (const Rat& p : peaks) {
        if (p < 0) throw DomainError("peaks must be >= 0");
        total += p;
    }
    if (total < omega) throw InfeasibleError("sum of peaks below endowment (no excess demand)");
    std::sort(peaks.begin(), peaks.end());
    if (total == omega) return peaks.back();

    const std::size_t n = peaks.size();
    Rat prefix = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Rat cand = (omega - prefix) / Rat(static_cast<unsigned long>(n - k));
        if (cand <= peaks[k]) return cand;
        prefix += peaks[k];
    }
    throw InfeasibleError("no segment contains the demand solution");
}

// Exact level for the topping-up side: the lambda >= 0 with
//   sum_j max(p_j, lambda) = omega.
// Requires sum p <= omega. With the k smallest peaks lifted to lambda,
// G(lambda) = k * lambda + suffix_k. Note n * lambda <= G implies
// lambda <= omega / n. When sum p == omega any lambda <= min p works; the
// canonical report is 0.
inline Rat solve_lambda_supply(std::vector<Rat> peaks, const Rat& omega) {
    if (peaks.empty()) throw DomainError("need at least one peak");
    if (!(omega > 0)) throw DomainError("endowment must be > 0");
    Rat total = 0;
    for (const Rat& p : peaks) {
        if (p < 0) throw DomainError("peaks must be >= 0");
        total += p;
    }
    if (total > omega) throw InfeasibleError("sum of peaks above endowment (no excess supply)");
    if (total == omega) return Rat(0);
    std::sort(peaks.begin(), peaks.end());

    Rat suffix = 0;
    for (std::size_t k = peaks.size(); k >= 1; --k) {
        Rat cand = (omega - suffix) / Rat(static_cast<unsigned long>(k));
        if (cand >= peaks[k - 1]) return cand;
        suffix += peaks[k - 1];
    }
    throw InfeasibleError("no segment contains the supply solution");
}

// Test oracle: plain bisection on a monotone nondecreasing F. Keeps the
// bracket invariant F(lo) <= target <= F(hi) and returns the midpoint once
// the bracket width is at most tol, so it converges to the leftmost
// solution. Used only to cross-check the exact solvers.
inline double bisection_oracle(const std::function<double(double)>& f, double target, double lo,
                               double hi, double tol) {
    if (!(tol > 0)) throw DomainError("tol must be > 0");
    if (!(lo <= hi)) throw DomainError("need lo <= hi");
    if (!(f(lo) <= target && target <= f(hi)))
        throw BracketError("target not bracketed by F(lo), F(hi)");
    for (int it = 0; it < 500 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace peakdiv
