// Exact rational arithmetic used throughout the library.
//
// Rat is GMP's mpq_class: canonical reduced form, positive denominator, exact
// +,-,*,/ and comparisons. The helpers here pin down the string format used in
// all JSON documents ("a/b" or "a", base 10) and reject malformed input.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace refund {

using Rat = mpq_class;

// Builds a rational from machine integers; den must be nonzero. Goes through
// mpz so that negative denominators keep their sign (the two-integer
// mpq_class constructor would reinterpret them as unsigned).
inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

// Parses "a" or "a/b" with optional leading '-' on the numerator only.
// Rejects empty parts, zero denominators, signs on the denominator, and any
// character outside [0-9]. This is stricter than GMP's own parser on purpose:
// document formats should not admit whitespace or base prefixes.
inline Rat rat_from_string(const std::string& s) {
    auto bad = [&](const char* why) {
        throw std::invalid_argument("bad rational '" + s + "': " + why);
    };
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "" : s.substr(slash + 1);

    auto check_digits = [&](const std::string& part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < part.size() && part[i] == '-') ++i;
        if (i == part.size()) bad("missing digits");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') bad("unexpected character");
    };
    check_digits(num, true);

    Rat q;
    if (slash == std::string::npos) {
        q = Rat(mpz_class(num, 10));
    } else {
        check_digits(den, false);
        mpz_class d(den, 10);
        if (d == 0) bad("zero denominator");
        q = Rat(mpz_class(num, 10), d);
        q.canonicalize();
    }
    return q;
}

// Canonical emission: "a" when the denominator is 1, else "a/b", reduced.
inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

inline double rat_to_double(const Rat& q) {
    return q.get_d();
}

}  // namespace refund
