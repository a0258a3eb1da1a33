#pragma once

#include "peakdiv/rational.hpp"

namespace peakdiv {

// Single-peaked preference over nonnegative amounts, represented by a
// piecewise-linear disutility with optional side jumps:
//
//   disutility(peak) = 0
//   disutility(x)    = jump_left  + slope_left  * (peak - x)   for x < peak
//   disutility(x)    = jump_right + slope_right * (x - peak)   for x > peak
//
// A positive jump shifts one whole side branch up by a constant. That keeps
// the relation single-peaked (each branch still strictly worsens away from
// the peak) while allowing a discontinuity at the peak, which some of the
// constructions in this library require. Lower disutility = more preferred.
struct Preference {
    Rat peak;
    Rat slope_left = 1;
    Rat slope_right = 1;
    Rat jump_left = 0;
    Rat jump_right = 0;

    bool operator==(const Preference&) const = default;
};

inline void validate(const Preference& p) {
    if (p.peak < 0) throw DomainError("preference peak must be >= 0");
    if (!(p.slope_left > 0) || !(p.slope_right > 0)) throw DomainError("preference slopes must be > 0");
    if (p.jump_left < 0 || p.jump_right < 0) throw DomainError("preference jumps must be >= 0");
}

inline Preference make_preference(Rat peak, Rat slope_left = 1, Rat slope_right = 1,
                                  Rat jump_left = 0, Rat jump_right = 0) {
    Preference p{std::move(peak), std::move(slope_left), std::move(slope_right),
                 std::move(jump_left), std::move(jump_right)};
    validate(p);
    return p;
}

inline Rat disutility(const Preference& p, const Rat& x) {
    if (x < 0) throw DomainError("amounts must be >= 0");
    if (x == p.peak) return 0;
    if (x < p.peak) {
        Rat d = p.jump_left + p.slope_left * (p.peak - x);
        return d;
    }
    Rat d = p.jump_right + p.slope_right * (x - p.peak);
    return d;
}

enum class Ordering { FirstPreferred, SecondPreferred, Indifferent };

// Strict preference / indifference between two amounts. All quantities are
// exact rationals, so equality of disutilities is decided exactly.
inline Ordering compare(const Preference& p, const Rat& x, const Rat& y) {
    const Rat dx = disutility(p, x);
    const Rat dy = disutility(p, y);
    if (dx < dy) return Ordering::FirstPreferred;
    if (dy < dx) return Ordering::SecondPreferred;
    return Ordering::Indifferent;
}

inline bool strictly_prefers(const Preference& p, const Rat& x, const Rat& y) {
    return compare(p, x, y) == Ordering::FirstPreferred;
}

// Preference with peak `gamma` that ranks `target` (> gamma) strictly above
// every amount in the open interval (0, gamma): with unit slopes,
// disutility(target) = target - gamma, while the left jump prices every
// x < gamma at no less than (target - gamma) + 1.
inline Preference make_step2_preference(const Rat& gamma, const Rat& target) {
    if (!(gamma > 0)) throw DomainError("gamma must be > 0");
    if (!(target > gamma)) throw DomainError("target must be > gamma");
    Preference p;
    p.peak = gamma;
    p.jump_left = (target - gamma) + 1;
    return p;
}

} // namespace peakdiv
