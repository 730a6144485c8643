#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pvkit/qpoly.hpp"

namespace pvkit {

class ConstantsField;
using FieldPtr = std::shared_ptr<const ConstantsField>;

// Element of a ConstantsField, stored as coordinates in the power basis
// 1, g, g^2, ... of the field generator. Always fully reduced, so equality
// is coordinate-wise.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<Rat> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat rational_value() const; // requires is_rational()

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<Rat> coords_;
};

// Exact field of constants: Q or a simple number field Q[y]/(f) with f
// irreducible (integer-coefficient, primitive); cyclotomic fields carry
// their order.
class ConstantsField : public std::enable_shared_from_this<ConstantsField> {
public:
    static FieldPtr rationals();
    // Q(zeta_n); n = 1, 2 give the rationals back.
    static FieldPtr cyclotomic(long n);
    // Q[y]/(min_poly); min_poly irreducible over Q (checked), degree >= 2.
    static FieldPtr number_field(const QPoly& min_poly, const std::string& gen_name);

    bool is_rationals() const { return degree_ == 1; }
    int degree() const { return degree_; }
    std::optional<long> cyclotomic_order() const { return cyclo_order_; }
    // monic rational minimal polynomial of the generator ("y" for Q)
    const QPoly& minimal_polynomial() const { return min_poly_; }
    const std::string& generator_name() const { return gen_name_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rat& r) const;
    FieldElement from_long(long n) const { return from_rational(Rat(n)); }
    FieldElement generator() const;
    FieldElement element(std::vector<Rat> coords) const;

    std::string name() const; // "Q", "Q(i)", "Q(zeta_3)", "Q(a)"

private:
    ConstantsField() = default;
    int degree_ = 1;
    QPoly min_poly_;    // monic
    std::optional<long> cyclo_order_;
    std::string gen_name_;
};

// Structural field identity (pointer equality or same minimal polynomial).
bool same_field(const FieldPtr& a, const FieldPtr& b);

// Ring homomorphism between constants fields, determined by the image of
// the source generator.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr source, FieldPtr target, FieldElement gen_image);
    static FieldEmbedding identity(const FieldPtr& f);
    const FieldPtr& source() const { return source_; }
    const FieldPtr& target() const { return target_; }
    const FieldElement& generator_image() const { return gen_image_; }
    FieldElement apply(const FieldElement& e) const;

private:
    FieldPtr source_;
    FieldPtr target_;
    FieldElement gen_image_;
};

// Least k >= 1 with c^k = 1, or nullopt when c is not a root of unity.
std::optional<long> root_of_unity_order(const FieldElement& c);

// Smallest common overfield in the supported tower, with embeddings.
struct FieldJoin {
    FieldPtr field;
    FieldEmbedding embed_first;
    FieldEmbedding embed_second;
};
FieldJoin field_join(const FieldPtr& f1, const FieldPtr& f2);

// Order of the group of roots of unity contained in K, with a generator.
struct RootsOfUnity {
    long order;             // group is cyclic of this order
    FieldElement generator; // primitive root of unity of that order
};
RootsOfUnity roots_of_unity_of(const FieldPtr& k);

// Multiplicative decomposition c = zeta^e * rho with zeta the cached
// primitive root of unity of K and rho a positive rational. nullopt when c
// is outside this model (the "unsupported constant class" boundary).
struct ConstantDecomposition {
    long torsion_order;     // order of mu(K)
    long torsion_exponent;  // e, 0 <= e < torsion_order
    Rat positive_rational;  // rho > 0
};
std::optional<ConstantDecomposition> decompose_constant(const FieldElement& c);

} // namespace pvkit
