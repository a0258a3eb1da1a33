#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>

#include "peakdiv/errors.hpp"

namespace peakdiv {

// All amounts, slopes and endowments are exact rationals. Inputs are decimal
// literals, so every quantity in the library stays exactly representable and
// allocation sums, indifference tests and axiom checks need no tolerances.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow10_int(unsigned long n) {
    Int r = 1;
    const Int ten = 10;
    for (unsigned long i = 0; i < n; ++i) r *= ten;
    return r;
}

// Parse a decimal literal ("3", "-0.25", "2.5e-3") into an exact rational.
inline Rat parse_decimal(std::string_view text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    const auto fail = [&] { throw ParseError("not a decimal number: '" + std::string(text) + "'"); };

    bool neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    Int mantissa = 0;
    std::size_t digits = 0;
    unsigned long frac_digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        mantissa = mantissa * 10 + (text[i] - '0');
        ++digits;
        ++i;
    }
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mantissa = mantissa * 10 + (text[i] - '0');
            ++digits;
            ++frac_digits;
            ++i;
        }
    }
    if (digits == 0) fail();

    long exponent = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        std::size_t edigits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exponent = exponent * 10 + (text[i] - '0');
            ++edigits;
            ++i;
            if (exponent > 100000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
        }
        if (edigits == 0) fail();
        if (eneg) exponent = -exponent;
    }
    if (i != n) fail();

    const long shift = exponent - static_cast<long>(frac_digits);
    Rat value(mantissa);
    if (shift > 0) {
        value *= Rat(pow10_int(static_cast<unsigned long>(shift)));
    } else if (shift < 0) {
        value /= Rat(pow10_int(static_cast<unsigned long>(-shift)));
    }
    if (neg) value = -value;
    return value;
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// floor(r) as an exact integer (cpp_int division truncates toward zero).
inline Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) % denominator(r) != 0 && numerator(r) < 0) --q;
    return q;
}

// Human-readable tables round to 6 significant digits; JSON output stays exact.
inline std::string format_amount(const Rat& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", to_double(r));
    return buf;
}

inline std::string rat_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace peakdiv
