#pragma once

#include <gmpxx.h>

#include <string>

#include "logchi/errors.hpp"

namespace logchi {

// Exact rational arithmetic. mpq_class keeps values canonicalized
// (reduced, positive denominator), which the whole toolkit relies on:
// there is no floating point anywhere in the core.
using Rational = mpq_class;

inline Rational rational_of(long num, long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "-3", "5/7". Throws input_error on malformed input.
inline Rational rational_from_string(const std::string& text) {
    try {
        Rational q(text);
        if (q.get_den() == 0) throw input_error("rational with zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal: " + text);
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long long to_long(const Rational& q) {
    if (!is_integer(q)) throw internal_error("to_long on non-integer rational");
    if (!q.get_num().fits_slong_p()) throw internal_error("rational exceeds long range");
    return q.get_num().get_si();
}

} // namespace logchi
