#include "pvkit/galois.hpp"

#include <random>
#include <sstream>

#include "pvkit/errors.hpp"

namespace pvkit {

namespace {

FieldElement char_value(const std::vector<FieldElement>& coords, const IVec& e) {
    FieldElement out = coords.at(0).field()->one();
    for (std::size_t i = 0; i < coords.size(); ++i)
        out = out * coords[i].pow(static_cast<long>(e.at(i).get_si()));
    return out;
}

// point of G with chi(e) != 1, built along one Smith coordinate of the
// quotient where the class of e is visibly nonzero
std::optional<GroupElement> moving_element(const PVPtr& s, const IVec& e) {
    const IntegerLattice& lat = s->lattice;
    const FieldPtr& k = s->base->coefficient_field();
    const SmithForm& sm = lat.smith();
    std::size_t n = lat.ambient_dim(), rank = lat.rank();
    IVec w = imat_apply(sm.u, e);
    RootsOfUnity mu = roots_of_unity_of(k);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement theta = k->one();
        if (i < rank) {
            long d = static_cast<long>(sm.invariant_factors[i].get_si());
            if (d <= 1 || w[i] % d == 0) continue;
            if (mu.order % d != 0) continue; // mu_d not realized over these constants
            theta = mu.generator.pow(mu.order / d);
        } else {
            if (w[i] == 0) continue;
            theta = k->from_long(2);
        }
        std::vector<FieldElement> coords;
        for (std::size_t t = 0; t < n; ++t)
            coords.push_back(theta.pow(static_cast<long>(sm.u[i][t].get_si())));
        GroupElement g = group_element(s, std::move(coords));
        if (char_value(g.coords, e) != k->one()) return g;
    }
    return std::nullopt;
}

} // namespace

std::vector<long> DiagonalizableGroup::invariant_factors() const {
    std::vector<long> out;
    for (const Int& d : lattice.quotient_torsion()) out.push_back(static_cast<long>(d.get_si()));
    return out;
}

long DiagonalizableGroup::torus_rank() const {
    return static_cast<long>(lattice.quotient_free_rank());
}

long DiagonalizableGroup::order() const {
    if (!is_finite()) throw usage_error("order of an infinite group");
    long n = 1;
    for (long d : invariant_factors()) n *= d;
    return n;
}

DiagonalizableGroup galois_group(const PVPtr& s) {
    return {s->base->coefficient_field(), s->tau_scalars.size(), s->lattice};
}

DiagonalizableGroup galois_group(const DifferenceModule& m) {
    return galois_group(construct_pv(m));
}

nlohmann::json group_to_json(const DiagonalizableGroup& g) {
    nlohmann::json j;
    j["invariant_factors"] = g.invariant_factors();
    j["torus_rank"] = g.torus_rank();
    j["field"] = g.field->name();
    return j;
}

GroupElement group_element(const PVPtr& s, std::vector<FieldElement> coords) {
    if (coords.size() != s->tau_scalars.size())
        throw usage_error("group element has wrong number of coordinates");
    const FieldPtr& k = s->base->coefficient_field();
    for (const auto& c : coords)
        if (c.is_zero()) throw domain_error("group element coordinate is zero");
    for (const auto& rel : s->relations)
        if (char_value(coords, rel.lambda) != k->one())
            throw domain_error("group element does not fix the torsion witness t^(" +
                               [&] {
                                   std::ostringstream os;
                                   for (std::size_t i = 0; i < rel.lambda.size(); ++i)
                                       os << (i ? "," : "") << rel.lambda[i].get_str();
                                   return os.str();
                               }() +
                               ")");
    return {std::move(coords)};
}

SElement act(const GroupElement& g, const SElement& e) {
    const PVPtr& s = e.presentation();
    if (g.coords.size() != s->tau_scalars.size())
        throw usage_error("group element does not match the presentation");
    SElement out(s);
    for (const auto& [exp, c] : e.terms())
        out = out + SElement::monomial(s, exp,
                                       c * s->base->from_constant(char_value(g.coords, exp)));
    return out;
}

AutomorphismCount automorphism_count_check(const PVPtr& s) {
    AutomorphismCount res;
    const IntegerLattice& lat = s->lattice;
    if (lat.quotient_free_rank() > 0) {
        res.skipped = true;
        return res;
    }
    res.expected = 1;
    for (const Int& d : lat.quotient_torsion()) res.expected *= static_cast<long>(d.get_si());
    const FieldPtr& k = s->base->coefficient_field();
    RootsOfUnity mu = roots_of_unity_of(k);
    std::size_t n = s->tau_scalars.size();
    // every coordinate of a finite-group automorphism is torsion, so
    // exhaustive search over mu(C_R)^n is complete
    double size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= static_cast<double>(mu.order);
    if (size > 1e6) throw usage_error("automorphism enumeration too large");
    std::vector<long> a(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& rel : s->relations) {
            long acc = 0;
            for (std::size_t i = 0; i < n; ++i)
                acc += a[i] * static_cast<long>(rel.lambda[i].get_si());
            if (((acc % mu.order) + mu.order) % mu.order != 0) { ok = false; break; }
        }
        if (ok) {
            std::vector<FieldElement> coords;
            for (std::size_t i = 0; i < n; ++i) coords.push_back(mu.generator.pow(a[i]));
            GroupElement g = group_element(s, std::move(coords));
            // commutation with tau on the generators, exactly
            for (std::size_t i = 0; i < n; ++i) {
                IVec ei(n, 0);
                ei[i] = 1;
                SElement t = SElement::monomial(s, ei, s->base->one());
                if (act(g, t.tau()) != act(g, t).tau())
                    throw internal_error("automorphism fails to commute with tau");
            }
            res.elements.push_back(std::move(g));
            ++res.count;
        }
        std::size_t i = 0;
        while (i < n && ++a[i] == mu.order) a[i++] = 0;
        if (i == n) break;
    }
    return res;
}

FixedSubringReport fixed_subring_check(const PVPtr& s, const DiagonalizableGroup& g,
                                       std::uint64_t seed) {
    FixedSubringReport rep;
    if (!(g.lattice == s->lattice))
        throw usage_error("group does not belong to this presentation");
    const IntegerLattice& lat = s->lattice;
    std::size_t n = lat.ambient_dim();
    rep.trace.push_back("every element of S is an R-combination of monomials t^e with e "
                        "in the fundamental domain of Z^" +
                        std::to_string(n) + " / L");
    rep.trace.push_back("a point sigma scales t^e by chi_sigma(e); invariance under all "
                        "points forces the class of e to vanish, i.e. e in L");
    rep.trace.push_back("for e in L the monomial t^e equals its unit witness r_e, an "
                        "element of R; hence S^G = R");
    rep.pass = true;
    // witness the argument: every nonzero probed class is moved by some point
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> ed(-3, 3);
    int moved = 0;
    for (int trial = 0; moved < 100 && trial < 2000; ++trial) {
        IVec e(n, 0);
        for (auto& x : e) x = ed(rng);
        IVec red = lat.reduce(e);
        bool zero = true;
        for (const auto& x : red) zero = zero && x == 0;
        if (zero) continue;
        auto mover = moving_element(s, e);
        if (!mover) {
            rep.pass = false;
            rep.trace.push_back("no point separates a nonzero class (constants too small)");
            return rep;
        }
        SElement t = SElement::monomial(s, e, s->base->one());
        if (act(*mover, t) == t) {
            rep.pass = false;
            rep.trace.push_back("separating point failed to move t^e");
            return rep;
        }
        // and the same point fixes R
        SElement r = SElement::from_base(s, s->base->x() + s->base->from_rational(Rat(moved)));
        if (act(*mover, r) != r) {
            rep.pass = false;
            rep.trace.push_back("point does not fix the base ring");
            return rep;
        }
        ++moved;
    }
    if (lat.quotient_free_rank() > 0 || !lat.quotient_torsion().empty())
        rep.trace.push_back(std::to_string(moved) +
                            " random nonzero classes checked: each moved by an explicit point");
    else
        rep.trace.push_back("quotient is trivial: S = R and the claim is immediate");
    return rep;
}

RepresentationData fibre_functor(const DifferenceModule& n, const PVPtr& s) {
    RepresentationData rep;
    rep.constants = s->base->coefficient_field();
    std::size_t m = s->tau_scalars.size();
    for (int i = 0; i < n.rank(); ++i)
        for (int j = 0; j < n.rank(); ++j)
            if (i != j && !n.tau_matrix()[i][j].is_zero())
                throw domain_error("fibre functor supports diagonal modules");
    rep.dimension = static_cast<std::size_t>(n.rank());
    for (int j = 0; j < n.rank(); ++j) {
        RingElement b = map_to_ring(s->base, n.system_matrix()[j][j], s->extension);
        // monomial fixed vector in slot j: g t^k e_j with tau(g t^k) = b g t^k,
        // i.e. b * prod a^{-k} a coboundary; joint-lattice vector with first
        // coordinate 1
        std::vector<RingElement> joint = {b};
        for (const auto& a : s->tau_scalars) joint.push_back(a);
        RelationLattice rl = relation_lattice(joint);
        IMat first(1, IVec(rl.lattice.basis().size(), 0));
        for (std::size_t t = 0; t < rl.lattice.basis().size(); ++t)
            first[0][t] = rl.lattice.basis()[t][0];
        auto z = solve_integer_system(first, {Int(1)});
        if (!z)
            throw domain_error("not in category: slot " + std::to_string(j + 1) +
                               " is not trivialized by S");
        IVec v(1 + m, 0);
        for (std::size_t t = 0; t < rl.lattice.basis().size(); ++t)
            for (std::size_t l = 0; l < 1 + m; ++l) v[l] += (*z)[t] * rl.lattice.basis()[t][l];
        IVec k(m);
        for (std::size_t l = 0; l < m; ++l) k[l] = -v[l + 1];
        RingElement ratio = b;
        for (std::size_t l = 0; l < m; ++l)
            ratio = ratio * s->tau_scalars[l].pow(static_cast<long>(-k[l].get_si()));
        auto gw = tau_coboundary(ratio);
        if (!gw) throw internal_error("fibre functor: witness extraction failed");
        SElement u = SElement::monomial(s, k, *gw);
        if (u.tau() != SElement::from_base(s, b) * u)
            throw internal_error("fibre functor: fixed vector check failed");
        rep.characters.push_back(s->lattice.reduce(k));
        rep.monomials.push_back(std::move(k));
        rep.units.push_back(std::move(*gw));
        rep.basis_labels.push_back("f" + std::to_string(j + 1));
    }
    return rep;
}

nlohmann::json representation_to_json(const RepresentationData& rep) {
    nlohmann::json j;
    j["dimension"] = rep.dimension;
    nlohmann::json chars = nlohmann::json::array();
    for (const auto& c : rep.characters) {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& x : c) v.push_back(static_cast<long>(x.get_si()));
        chars.push_back(v);
    }
    j["characters"] = chars;
    j["basis"] = rep.basis_labels;
    return j;
}

DifferenceModule descend(const IVec& chi, const PVPtr& s) {
    if (chi.size() != s->tau_scalars.size()) throw usage_error("character has wrong length");
    IVec k = s->lattice.reduce(chi);
    RingElement b = s->base->one();
    for (std::size_t i = 0; i < k.size(); ++i)
        b = b * s->tau_scalars[i].pow(static_cast<long>(k[i].get_si()));
    Mat<RingElement> sys(1, std::vector<RingElement>(1, b));
    DifferenceModule out = DifferenceModule::from_system_matrix(s->base, sys);
    // round trip: the descended module lies in the category with character chi
    RepresentationData rep = fibre_functor(out, s);
    if (rep.dimension != 1 || rep.characters[0] != k)
        throw internal_error("descent round trip failed");
    return out;
}

} // namespace pvkit
