#pragma once

#include <map>
#include <memory>

#include "pvkit/lattice.hpp"
#include "pvkit/module.hpp"
#include "pvkit/orbit.hpp"

#include "json.hpp"

namespace pvkit {

// L = {k : prod a_i^{k_i} is a tau-coboundary}, with a verified witness
// r_lambda for every basis vector of L. Stage 1 is the integer kernel of
// the orbit-sum matrix (plus the x-valuation row in the q-case); stage 2
// cuts out the sublattice where the residual constant telescopes to 1
// (resp. to a q-power), solved in the multiplicative constant model.
struct RelationLattice {
    IntegerLattice lattice;
    std::vector<RingElement> witnesses; // parallel to lattice.basis()
};
RelationLattice relation_lattice(const std::vector<RingElement>& a);

struct TorsionRelation {
    IVec lambda;
    RingElement witness; // t^lambda = witness, a unit of the base ring
};

// S = R[t_1^{+-1},...,t_m^{+-1}]/(t^lambda - r_lambda), tau(t_i) = s_i t_i.
struct PVPresentation {
    RingPtr base;          // constants possibly extended beyond the input's
    RingPtr original_base;
    std::optional<FieldEmbedding> extension; // original constants -> extended
    std::vector<RingElement> tau_scalars; // s_i, units of base
    IntegerLattice lattice = IntegerLattice::zero(0);
    std::vector<TorsionRelation> relations; // one per lattice basis vector
};
using PVPtr = std::shared_ptr<const PVPresentation>;

// consistency-checked assembly (prod s_i^{lambda_i} = tau(r)/r per
// relation); lattice generators need not be minimal, so hand-built
// non-minimal presentations are representable for verify_pv
PVPtr make_presentation(RingPtr base, std::vector<RingElement> tau_scalars,
                        std::vector<std::pair<IVec, RingElement>> relations,
                        RingPtr original_base = nullptr);

// m diagonal over a shift or q-dilation field; constants are extended via
// field_join when the torsion invariant factors need missing roots of unity
PVPtr construct_pv(const DifferenceModule& m);

// Element of S: finite sum of monomials g * t^e with e reduced into the
// fundamental domain of Z^m / L (Smith coordinates, [0, d_i) on torsion).
class SElement {
public:
    explicit SElement(PVPtr s);
    static SElement monomial(PVPtr s, const IVec& e, const RingElement& coeff);
    static SElement from_base(PVPtr s, const RingElement& coeff);

    const PVPtr& presentation() const { return s_; }
    const std::map<IVec, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SElement operator+(const SElement& o) const;
    SElement operator-(const SElement& o) const;
    SElement operator*(const SElement& o) const;
    bool operator==(const SElement& o) const;
    bool operator!=(const SElement& o) const { return !(*this == o); }

    SElement tau(long power = 1) const;
    std::string to_string() const;

private:
    void insert(const IVec& e, const RingElement& coeff);
    PVPtr s_;
    std::map<IVec, RingElement> terms_;
};

struct PVCondition {
    bool pass = false;
    std::vector<std::string> notes;
};

struct PVReport {
    PVCondition a, b, c, d, e;
    // for (b)/(c) failures on a non-minimal lattice: mu with t^mu - r_mu
    // generating a proper nonzero tau-stable ideal
    std::optional<std::pair<IVec, RingElement>> witness_ideal;
    bool all_pass() const { return a.pass && b.pass && c.pass && d.pass && e.pass; }
};
PVReport verify_pv(const PVPtr& s, const DifferenceModule& m);

// t_i -> units[i] * t'^{exponents[i]}, a difference-ring isomorphism over R
struct PVIsomorphism {
    std::vector<IVec> exponents;
    std::vector<RingElement> units;
};
PVIsomorphism pv_isomorphism(const PVPtr& s1, const PVPtr& s2);

PVPtr universal_pv(const std::vector<DifferenceModule>& generators);

// canonical serialization for golden tests
nlohmann::json pv_to_json(const PVPtr& s);

// move e into target (same kind, possibly larger constants) coefficientwise
RingElement map_to_ring(const RingPtr& target, const RingElement& e,
                        const std::optional<FieldEmbedding>& emb);

// solve prod_i u_i^{rows[j][i]} = c_j for units u_i in the constants field
std::optional<std::vector<FieldElement>> solve_unit_system(const FieldPtr& k, const IMat& rows,
                                                           const std::vector<FieldElement>& c);

} // namespace pvkit
