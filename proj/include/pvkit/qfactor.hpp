#pragma once

#include <vector>

#include "pvkit/qpoly.hpp"

namespace pvkit {

// Factorization over Q: unit * prod factors[i]^mult[i] == p, factors monic
// irreducible, sorted lexicographically on coefficient vectors.
struct QFactorization {
    Rat unit;
    std::vector<std::pair<QPoly, int>> factors;
};

QFactorization qpoly_factor(const QPoly& p);

bool qpoly_is_irreducible(const QPoly& p);

// n-th cyclotomic polynomial, monic with integer coefficients.
QPoly cyclotomic_polynomial(long n);

// If p (monic, integer coefficients) equals some cyclotomic polynomial
// Phi_n, return n. Search is exact: candidates are n with phi(n) = deg p.
std::optional<long> cyclotomic_index_of(const QPoly& p);

long euler_phi(long n);

} // namespace pvkit
