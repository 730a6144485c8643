#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pvkit/ratfunc.hpp"

namespace pvkit {

enum class RingKind {
    shift_field,      // K(x), tau: x -> x+1
    q_dilation_field, // K(x), tau: x -> q*x
    shift_poly,       // K[x], tau: x -> x+1
    cyclic_product,   // K^n, tau permutes coordinates
};

class BaseDifferenceRing;
using RingPtr = std::shared_ptr<const BaseDifferenceRing>;

// Element of a base difference ring. Field kinds and polynomial rings store
// a RatFunc / FPoly in x; product rings store a coordinate tuple.
class RingElement {
public:
    RingElement() = default;
    RingElement(RingPtr ring, RatFunc f);
    RingElement(RingPtr ring, FPoly p);
    RingElement(RingPtr ring, std::vector<FieldElement> tuple);

    const RingPtr& ring() const { return ring_; }
    bool holds_rat_func() const { return std::holds_alternative<RatFunc>(v_); }
    bool holds_poly() const { return std::holds_alternative<FPoly>(v_); }
    bool holds_tuple() const;
    const RatFunc& rat_func() const { return std::get<RatFunc>(v_); }
    const FPoly& poly() const { return std::get<FPoly>(v_); }
    const std::vector<FieldElement>& tuple() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement inverse() const; // throws domain_error when not a unit
    RingElement pow(long e) const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    RingPtr ring_;
    std::variant<std::monostate, RatFunc, FPoly, std::vector<FieldElement>> v_;
};

class BaseDifferenceRing : public std::enable_shared_from_this<BaseDifferenceRing> {
public:
    static RingPtr shift_field(FieldPtr k);
    // q nonzero and not a root of unity (hard precondition).
    static RingPtr q_dilation_field(FieldPtr k, Rat q);
    static RingPtr shift_poly(FieldPtr k);
    // tau(a)_i = a_{perm[i]}; perm must be a permutation of 0..n-1.
    static RingPtr cyclic_product(FieldPtr k, std::vector<int> perm);
    // single n-cycle (a_0,...,a_{n-1}) -> (a_{n-1},a_0,...)
    static RingPtr cyclic_product_cycle(FieldPtr k, int n);

    RingKind kind() const { return kind_; }
    const FieldPtr& coefficient_field() const { return k_; }
    bool is_field() const {
        return kind_ == RingKind::shift_field || kind_ == RingKind::q_dilation_field;
    }
    const Rat& q() const { return q_; }             // q-dilation only
    int tuple_size() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& permutation() const { return perm_; }
    // orbits of the coordinate permutation, each sorted
    std::vector<std::vector<int>> permutation_orbits() const;

    RingElement zero() const;
    RingElement one() const;
    RingElement from_constant(const FieldElement& c) const;
    RingElement from_rational(const Rat& r) const;
    RingElement x() const;                          // x-based kinds only
    RingElement from_rat_func(RatFunc f) const;     // field kinds
    RingElement from_poly(FPoly p) const;           // shift_poly
    RingElement from_tuple(std::vector<FieldElement> t) const;

    std::string name() const;

private:
    BaseDifferenceRing() = default;
    RingKind kind_ = RingKind::shift_field;
    FieldPtr k_;
    Rat q_;
    std::vector<int> perm_, perm_inv_;
    friend RingElement tau_apply(const RingElement&, long);
};

bool same_ring(const RingPtr& a, const RingPtr& b);

// tau^power applied to e.
RingElement tau_apply(const RingElement& e, long power = 1);

// C_R together with a human-readable correctness certificate. Throws
// domain_error when the constants do not form a field (non-transitive
// coordinate permutation).
struct ConstantsInfo {
    FieldPtr field;
    std::string certificate;
};
ConstantsInfo constants_of(const RingPtr& r);

struct DifferenceIdeal {
    RingPtr ring;
    std::vector<RingElement> generators;
    bool is_zero_ideal() const;
};

// true iff tau^{+-1} of every generator lies in the ideal. Throws
// domain_error("unsupported ambient ring") when membership is undecidable
// in the given presentation.
bool is_tau_stable(const DifferenceIdeal& ideal);

// ideal membership in the supported presentations (used by is_tau_stable
// and by simplicity witnesses)
bool ideal_contains(const DifferenceIdeal& ideal, const RingElement& e);

enum class SimplicityVerdict { simple, not_simple, unknown };

struct SimplicityCertificate {
    SimplicityVerdict verdict = SimplicityVerdict::unknown;
    std::vector<std::string> trace;
    std::optional<DifferenceIdeal> witness; // proper nonzero tau-stable ideal
};

SimplicityCertificate simplicity_certificate(const RingPtr& r);

// structural nilpotent search; true = reduced
bool reducedness_probe(const RingPtr& r);

// Lazy localization: denominators are finite products of tau^k-shifts of
// the generators. Trivial (gens all units) collapses to the base ring.
struct LocalizedRing {
    RingPtr base;
    std::vector<RingElement> inverted; // empty when localization is trivial
    bool is_trivial() const { return inverted.empty(); }
    // membership for fractions over a shift_poly base
    bool contains(const RatFunc& f) const;
};
LocalizedRing localize(const RingPtr& r, const std::vector<RingElement>& gens);

// Lemma check: total ring of fractions S of a simple R, with the report
// that C_R is a field and C_S = C_R (recomputed, not assumed).
struct TotalFractionsResult {
    RingPtr s;
    std::vector<std::string> report;
};
TotalFractionsResult total_fractions_check(const RingPtr& r);

} // namespace pvkit
