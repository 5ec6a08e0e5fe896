#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "papp/errors.hpp"

namespace papp {

// Exact arithmetic everywhere a method is defined over rationals: portioning
// shares, apportionment quotients, PAV/harmonic scores, Phragmen loads and
// axiom thresholds. Counterexamples in this domain hinge on exact ties, so
// floats are confined to the Nash solver and sampled random priority.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Renders as "num/den", den always present so the format is stable.
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "num", "num/den", with optional sign on the numerator.
inline Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + text);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ParseError("malformed rational: " + text);
    }
}

/// Harmonic numbers H_0..H_max as exact rationals; H_0 = 0.
inline std::vector<Rat> harmonic_numbers(int max) {
    std::vector<Rat> h(static_cast<size_t>(max) + 1);
    h[0] = 0;
    for (int j = 1; j <= max; ++j) h[j] = h[j - 1] + Rat(1, j);
    return h;
}

} // namespace papp
