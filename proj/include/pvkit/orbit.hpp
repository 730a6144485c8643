#pragma once

#include <optional>

#include "pvkit/ring.hpp"

namespace pvkit {

// tau-orbit class of monic irreducible factors: member at offset h is
// rep(x+h) in the shift case and monic(rep(q^h x)) in the q-case, so
// member_{h+1} = monic(tau(member_h)) either way.
struct OrbitMember {
    long offset;
    long exponent;
};

struct TauOrbit {
    FPoly representative; // monic irreducible, the offset-0 member
    std::vector<OrbitMember> members; // sorted by offset, exponents nonzero
    long exponent_sum() const;
};

struct OrbitDecomposition {
    RingPtr ring;
    FieldElement constant;
    long x_valuation = 0; // exponent of the factor x; tracked in the q-case only
    std::vector<TauOrbit> orbits;
    RingElement reassemble() const; // equals the decomposed input exactly
};

FPoly orbit_member_poly(const RingPtr& r, const FPoly& rep, long offset);
// offset h with p == member of rep's orbit at h, if the classes match
std::optional<long> orbit_offset(const RingPtr& r, const FPoly& rep, const FPoly& p);

// pre: base shift or q-dilation field, a nonzero
OrbitDecomposition orbit_decompose(const RingElement& a);

// a = c * tau(r0)/r0 with c constant, by telescoping inside each orbit;
// nullopt when some orbit exponent-sum is nonzero (or, in the q-case, the
// x-valuation is nonzero, since tau(r)/r never has one)
struct Telescoping {
    RingElement r0;
    FieldElement residual_constant;
};
std::optional<Telescoping> telescope(const RingElement& a);

// r with a = tau(r)/r: telescoping plus the residual-constant test
// (c = 1 for shift; c a q-power absorbed into x^w for q-dilation)
std::optional<RingElement> tau_coboundary(const RingElement& a);

} // namespace pvkit
