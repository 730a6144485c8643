#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvkit/rational.hpp"

namespace pvkit {

// Dense univariate polynomial over Q. Coefficients ascending; no trailing
// zero coefficient (the zero polynomial has an empty vector).
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& r);
    static QPoly x();
    static QPoly monomial(const Rat& c, std::size_t deg);

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rat& coeff(std::size_t i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& r) const;

    // Euclidean division; divisor must be nonzero.
    static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
    QPoly operator/(const QPoly& o) const { return divmod(*this, o).first; }
    QPoly operator%(const QPoly& o) const { return divmod(*this, o).second; }

    QPoly derivative() const;
    Rat eval(const Rat& x) const;
    QPoly monic() const;
    // substitute x -> x + h
    QPoly shift(const Rat& h) const;
    // substitute x -> s*x
    QPoly scale_arg(const Rat& s) const;
    QPoly compose(const QPoly& inner) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

QPoly qpoly_gcd(QPoly a, QPoly b); // monic gcd
// extended gcd: g = a*u + b*v with g monic (or zero)
struct QPolyXgcd { QPoly g, u, v; };
QPolyXgcd qpoly_xgcd(const QPoly& a, const QPoly& b);

Rat qpoly_resultant(const QPoly& a, const QPoly& b);

// Yun squarefree decomposition: list of (factor, multiplicity) with factors
// monic squarefree pairwise coprime; product^mult * unit == input.
std::vector<std::pair<QPoly, int>> qpoly_squarefree(const QPoly& p);

// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
QPoly qpoly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

} // namespace pvkit
