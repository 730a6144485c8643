#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pvkit/field.hpp"

namespace pvkit {

// Dense univariate polynomial over a ConstantsField.
class FPoly {
public:
    explicit FPoly(FieldPtr field) : field_(std::move(field)) {}
    FPoly(FieldPtr field, std::vector<FieldElement> coeffs);
    static FPoly constant(const FieldElement& c);
    static FPoly from_rational_poly(const FieldPtr& k, const QPoly& p);
    static FPoly x(const FieldPtr& k);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    FieldElement coeff(std::size_t i) const;
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& leading() const;
    bool is_constant() const { return c_.size() <= 1; }
    FieldElement constant_value() const; // requires is_constant()

    FPoly operator+(const FPoly& o) const;
    FPoly operator-(const FPoly& o) const;
    FPoly operator-() const;
    FPoly operator*(const FPoly& o) const;
    FPoly operator*(const FieldElement& c) const;
    static std::pair<FPoly, FPoly> divmod(const FPoly& a, const FPoly& b);
    FPoly operator/(const FPoly& o) const { return divmod(*this, o).first; }
    FPoly operator%(const FPoly& o) const { return divmod(*this, o).second; }
    bool operator==(const FPoly& o) const;

    FPoly derivative() const;
    FieldElement eval(const FieldElement& v) const;
    FPoly monic() const;
    FPoly shift(const FieldElement& h) const;     // x -> x + h
    FPoly scale_arg(const FieldElement& s) const; // x -> s*x
    FPoly compose(const FPoly& inner) const;
    FPoly pow(long e) const;                      // e >= 0
    // coefficient-wise map into another field
    FPoly map_coefficients(const FieldEmbedding& emb) const;

    std::string to_string(const std::string& var = "x") const;

    // total order for canonical sorting: by degree, then coefficient vectors
    static bool less(const FPoly& a, const FPoly& b);

private:
    void trim();
    FieldPtr field_;
    std::vector<FieldElement> c_;
};

FPoly fpoly_gcd(FPoly a, FPoly b); // monic
struct FPolyXgcd { FPoly g, u, v; };
FPolyXgcd fpoly_xgcd(const FPoly& a, const FPoly& b);
std::vector<std::pair<FPoly, int>> fpoly_squarefree(const FPoly& p);

// Factorization over the coefficient field (Trager reduction to Q for
// proper number fields): unit * prod factors^mult == p, factors monic
// irreducible, canonically sorted.
struct FFactorization {
    FieldElement unit;
    std::vector<std::pair<FPoly, int>> factors;
};
FFactorization fpoly_factor(const FPoly& p);

// Roots of p lying in its coefficient field, with multiplicities.
std::vector<std::pair<FieldElement, int>> fpoly_roots_in_field(const FPoly& p);

} // namespace pvkit
