#pragma once

#include "pvkit/fpoly.hpp"

namespace pvkit {

// Element of K(x): numerator / denominator in normal form (denominator
// monic, gcd(num, den) = 1). Normal form is unique, so equality is
// component-wise.
class RatFunc {
public:
    explicit RatFunc(FieldPtr field); // zero
    RatFunc(FPoly num, FPoly den);
    static RatFunc from_poly(FPoly p);
    static RatFunc constant(const FieldElement& c);
    static RatFunc x(const FieldPtr& k);

    const FieldPtr& field() const { return num_.field(); }
    const FPoly& num() const { return num_; }
    const FPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }
    FieldElement constant_value() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inverse() const;
    RatFunc pow(long e) const;
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // substitute x -> x + h, x -> s*x
    RatFunc shift_arg(const FieldElement& h) const;
    RatFunc scale_arg(const FieldElement& s) const;
    RatFunc map_coefficients(const FieldEmbedding& emb) const;

    // order of vanishing at x = 0 (negative for a pole); error on zero
    long x_valuation() const;

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    FPoly num_, den_;
};

} // namespace pvkit
