#pragma once

#include "pvkit/pv.hpp"

namespace pvkit {

// Diagonalizable algebraic group over C, stored by its character group
// Z^n / L (a complete invariant); points are Hom(Z^n/L, C^*).
struct DiagonalizableGroup {
    FieldPtr field;
    std::size_t character_rank = 0;
    IntegerLattice lattice = IntegerLattice::zero(0);

    std::vector<long> invariant_factors() const; // torsion orders > 1
    long torus_rank() const;
    bool is_finite() const { return torus_rank() == 0; }
    long order() const; // finite groups only
    bool is_trivial() const { return is_finite() && order() == 1; }
};

DiagonalizableGroup galois_group(const PVPtr& s);
DiagonalizableGroup galois_group(const DifferenceModule& m);

nlohmann::json group_to_json(const DiagonalizableGroup& g);

// Automorphism datum of S over R: sigma(t_i) = coords[i] * t_i with the
// constants respecting every torsion relation of S.
struct GroupElement {
    std::vector<FieldElement> coords;
};

// checked: coords nonzero and prod coords^lambda = 1 per relation
GroupElement group_element(const PVPtr& s, std::vector<FieldElement> coords);

SElement act(const GroupElement& g, const SElement& e);

struct AutomorphismCount {
    bool skipped = false; // infinite group: nothing to enumerate
    long count = 0;
    long expected = 0;
    std::vector<GroupElement> elements;
    bool pass() const { return skipped || count == expected; }
};
AutomorphismCount automorphism_count_check(const PVPtr& s);

struct FixedSubringReport {
    bool pass = false;
    std::vector<std::string> trace;
};
// monomial argument that S^G = R, plus seeded non-invariance spot checks
FixedSubringReport fixed_subring_check(const PVPtr& s, const DiagonalizableGroup& g,
                                       std::uint64_t seed = 2026);

// Fibre-functor value (N tensor_R S)^tau with its G-characters.
struct RepresentationData {
    FieldPtr constants;
    std::size_t dimension = 0;
    std::vector<IVec> characters;           // reduced modulo the lattice
    std::vector<std::string> basis_labels;
    // fixed basis vectors: slot j is units[j] * t^{monomials[j]} e_j
    std::vector<IVec> monomials;
    std::vector<RingElement> units;
};
RepresentationData fibre_functor(const DifferenceModule& n, const PVPtr& s);

nlohmann::json representation_to_json(const RepresentationData& rep);

// rank-1 module realizing the character chi (Prop: Galois descent)
DifferenceModule descend(const IVec& chi, const PVPtr& s);

} // namespace pvkit
