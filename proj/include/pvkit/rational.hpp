#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pvkit/errors.hpp"

namespace pvkit {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Rat rat_pow(const Rat& base, long e);

// Canonical string form: "p" or "p/q" with q > 0.
std::string rat_to_string(const Rat& r);

// Parses "p", "-p", "p/q". Throws usage_error on malformed input.
Rat rat_parse(const std::string& s);

// Prime factorization of a nonzero rational: map prime -> exponent
// (negative exponents for the denominator). Sign is returned separately.
struct RatFactorization {
    int sign = 1; // +1 or -1
    std::map<Int, long> exponents;
};
RatFactorization rat_factor(const Rat& r);

// floor(log) style helper: exact integer k with r == q^k, if one exists.
std::optional<long> rat_log_exact(const Rat& r, const Rat& q);

} // namespace pvkit
