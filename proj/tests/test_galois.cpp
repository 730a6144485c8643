#include "doctest.h"

#include <random>
#include <set>

#include "pvkit/errors.hpp"
#include "pvkit/galois.hpp"

using namespace pvkit;

namespace {

RingElement rfe(const RingPtr& r, std::initializer_list<long> num,
                std::initializer_list<long> den) {
    const FieldPtr& k = r->coefficient_field();
    auto mk = [&](std::initializer_list<long> cs) {
        std::vector<FieldElement> c;
        for (long v : cs) c.push_back(k->from_long(v));
        return FPoly(k, std::move(c));
    };
    return r->from_rat_func(RatFunc(mk(num), mk(den)));
}

DifferenceModule scalar_system(const RingPtr& r, const RingElement& b) {
    Mat<RingElement> sys(1, std::vector<RingElement>(1, b));
    return DifferenceModule::from_system_matrix(r, sys);
}

IVec iv(std::initializer_list<long> xs) {
    IVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("rank-1 galois group table") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);

    auto g1 = galois_group(scalar_system(r, r->one()));
    CHECK(g1.is_trivial());

    auto g2 = galois_group(scalar_system(r, rfe(r, {1, 1}, {0, 1})));
    CHECK(g2.is_trivial());

    auto g3 = galois_group(scalar_system(r, r->from_rational(Rat(-1))));
    CHECK(g3.invariant_factors() == std::vector<long>{2});
    CHECK(g3.torus_rank() == 0);
    CHECK(g3.order() == 2);

    auto g4 = galois_group(scalar_system(r, r->from_rational(Rat(2))));
    CHECK(g4.torus_rank() == 1);
    CHECK(g4.invariant_factors().empty());
    CHECK_FALSE(g4.is_finite());

    auto g5 = galois_group(scalar_system(r, r->x()));
    CHECK(g5.torus_rank() == 1);
    CHECK(g5.invariant_factors().empty());
}

TEST_CASE("mu_4 from diag(i, -i) over Q(i)") {
    auto qi = ConstantsField::cyclotomic(4);
    auto r = BaseDifferenceRing::shift_field(qi);
    FieldElement i = qi->generator();
    Mat<RingElement> sys(2, std::vector<RingElement>(2, r->zero()));
    sys[0][0] = r->from_constant(i);
    sys[1][1] = r->from_constant(-i);
    auto m = DifferenceModule::from_system_matrix(r, sys);
    auto s = construct_pv(m);
    auto g = galois_group(s);
    CHECK(g.invariant_factors() == std::vector<long>{4});
    CHECK(g.torus_rank() == 0);
    CHECK(g.order() == 4);
    // L = {k1 + 3 k2 = 0 mod 4}: e2 is three times e1 in the character group
    CHECK(g.lattice.contains(iv({1, 1})));
    CHECK(g.lattice.contains(iv({4, 0})));
    CHECK_FALSE(g.lattice.contains(iv({1, 0})));
    CHECK(s->lattice.reduce(iv({0, 1})) == s->lattice.reduce(iv({3, 0})));

    nlohmann::json j = group_to_json(g);
    CHECK(j["invariant_factors"] == nlohmann::json::array({4}));
    CHECK(j["torus_rank"] == 0);
    CHECK(j["field"] == "Q(i)");

    auto count = automorphism_count_check(s);
    CHECK_FALSE(count.skipped);
    CHECK(count.expected == 4);
    CHECK(count.count == 4);
    CHECK(count.pass());

    // fibre of M itself: standard basis characters
    auto rep = fibre_functor(m, s);
    CHECK(rep.dimension == 2);
    CHECK(rep.characters[0] == s->lattice.reduce(iv({1, 0})));
    CHECK(rep.characters[1] == s->lattice.reduce(iv({0, 1})));
}

TEST_CASE("group action on S") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);
    auto m = DifferenceModule::scalar(r, r->from_rational(Rat(-1)));
    auto s = construct_pv(m);

    SElement t = SElement::monomial(s, iv({1}), s->base->one());
    GroupElement id = group_element(s, {q->one()});
    CHECK(act(id, t) == t);

    GroupElement flip = group_element(s, {q->from_long(-1)});
    CHECK(act(flip, t) == SElement::monomial(s, iv({1}), s->base->from_rational(Rat(-1))));
    SElement tsq = t * t; // t^2 = 1, fixed
    CHECK(act(flip, tsq) == tsq);
    CHECK_THROWS_AS(group_element(s, {q->from_long(2)}), domain_error);

    // torus case: any nonzero constant scales t
    auto m2 = DifferenceModule::scalar(r, r->from_rational(Rat(1, 2))); // system scalar 2
    auto s2 = construct_pv(m2);
    GroupElement five = group_element(s2, {q->from_long(5)});
    SElement u = SElement::monomial(s2, iv({1}), s2->base->one());
    SElement img = act(five, u);
    CHECK(img.tau() == SElement::from_base(s2, s2->base->from_rational(Rat(2))) * img);
}

TEST_CASE("equivariance on random elements") {
    auto qi = ConstantsField::cyclotomic(4);
    auto r = BaseDifferenceRing::shift_field(qi);
    FieldElement i = qi->generator();
    Mat<RingElement> sys(2, std::vector<RingElement>(2, r->zero()));
    sys[0][0] = r->from_constant(i);
    sys[1][1] = r->from_constant(-i);
    auto s = construct_pv(DifferenceModule::from_system_matrix(r, sys));
    auto count = automorphism_count_check(s);
    REQUIRE(count.count == 4);

    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> ed(-3, 3);
    std::uniform_int_distribution<long> cd(1, 5);
    std::uniform_int_distribution<std::size_t> gd(0, count.elements.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        SElement e(s);
        for (int term = 0; term < 3; ++term) {
            RingElement c = r->x() + r->from_rational(Rat(cd(rng)));
            e = e + SElement::monomial(s, iv({ed(rng), ed(rng)}), c);
        }
        const GroupElement& g = count.elements[gd(rng)];
        CHECK(act(g, e.tau()) == act(g, e).tau());
        CHECK(act(g, e.tau(-1)) == act(g, e).tau(-1));
    }
}

TEST_CASE("automorphism counts and fixed subring") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);

    auto s_triv = construct_pv(scalar_system(r, r->one()));
    auto c1 = automorphism_count_check(s_triv);
    CHECK(c1.count == 1);
    CHECK(c1.expected == 1);

    auto s_mu2 = construct_pv(scalar_system(r, r->from_rational(Rat(-1))));
    auto c2 = automorphism_count_check(s_mu2);
    CHECK(c2.count == 2);
    CHECK(c2.expected == 2);

    auto s_torus = construct_pv(scalar_system(r, r->from_rational(Rat(2))));
    CHECK(automorphism_count_check(s_torus).skipped);

    for (const auto& s : {s_triv, s_mu2, s_torus}) {
        auto rep = fixed_subring_check(s, galois_group(s));
        CHECK(rep.pass);
        CHECK_FALSE(rep.trace.empty());
    }
    auto s_univ = universal_pv({DifferenceModule::scalar(r, r->from_rational(Rat(-1))),
                                DifferenceModule::scalar(r, r->from_rational(Rat(1, 2)))});
    CHECK(fixed_subring_check(s_univ, galois_group(s_univ)).pass);
}

TEST_CASE("fibre functor examples") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);
    auto m = scalar_system(r, r->from_rational(Rat(-1)));
    auto s = construct_pv(m);

    auto rep_m = fibre_functor(m, s);
    CHECK(rep_m.dimension == 1);
    CHECK(rep_m.characters[0] == s->lattice.reduce(iv({1})));

    auto sq = construct(ModuleConstruction::tensor, m, &m);
    auto rep_sq = fibre_functor(sq, s);
    CHECK(rep_sq.dimension == 1);
    CHECK(rep_sq.characters[0] == iv({0})); // 2*e_1 lies in L: trivial representation

    auto unit = scalar_system(r, r->one());
    CHECK(fibre_functor(unit, s).characters[0] == iv({0}));

    CHECK_THROWS_AS(fibre_functor(scalar_system(r, r->from_rational(Rat(2))), s), domain_error);

    nlohmann::json j = representation_to_json(rep_m);
    CHECK(j["dimension"] == 1);
    CHECK(j["basis"] == nlohmann::json::array({"f1"}));
}

TEST_CASE("monoidality and duals on random category pairs") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);
    auto s = universal_pv({DifferenceModule::scalar(r, r->from_rational(Rat(-1))),
                           DifferenceModule::scalar(r, r->from_rational(Rat(1, 2)))});
    std::size_t n = s->tau_scalars.size();
    std::mt19937_64 rng(7001);
    std::uniform_int_distribution<long> cd(-4, 4);
    auto random_module = [&](IVec& chi_out) {
        IVec chi(n, 0);
        for (auto& x : chi) x = cd(rng);
        chi_out = s->lattice.reduce(chi);
        return descend(chi, s);
    };
    for (int trial = 0; trial < 50; ++trial) {
        IVec chi1, chi2;
        auto n1 = random_module(chi1);
        auto n2 = random_module(chi2);
        auto pair = construct(ModuleConstruction::dsum, n1, &n2);
        auto prod = construct(ModuleConstruction::tensor, pair, &pair);
        auto rep_pair = fibre_functor(pair, s);
        auto rep_prod = fibre_functor(prod, s);
        CHECK(rep_prod.dimension == rep_pair.dimension * rep_pair.dimension);
        // characters add under tensor
        std::multiset<IVec> expect, got;
        for (const auto& a : rep_pair.characters)
            for (const auto& b : rep_pair.characters) {
                IVec sum(n, 0);
                for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
                expect.insert(s->lattice.reduce(sum));
            }
        for (const auto& c : rep_prod.characters) got.insert(c);
        CHECK(expect == got);
        // dual inverts characters
        auto rep_dual = fibre_functor(construct(ModuleConstruction::dual, n1, nullptr), s);
        IVec neg(n, 0);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -chi1[i];
        CHECK(rep_dual.characters[0] == s->lattice.reduce(neg));
    }
}

TEST_CASE("descent round trips") {
    auto q = ConstantsField::rationals();
    auto r = BaseDifferenceRing::shift_field(q);

    // mu_2: both characters
    auto s_mu2 = construct_pv(scalar_system(r, r->from_rational(Rat(-1))));
    auto d0 = descend(iv({0}), s_mu2);
    CHECK(d0.system_matrix()[0][0].is_one());
    auto d1 = descend(iv({1}), s_mu2);
    CHECK(d1.system_matrix()[0][0] == s_mu2->base->from_rational(Rat(-1)));
    CHECK(fibre_functor(d1, s_mu2).characters[0] == iv({1}));

    // torus a = 2: chi = 3 gives M_8, plus 20 more torus characters
    auto s_t = construct_pv(scalar_system(r, r->from_rational(Rat(2))));
    CHECK(descend(iv({3}), s_t).system_matrix()[0][0] == s_t->base->from_rational(Rat(8)));
    for (long k = -10; k < 10; ++k) {
        auto mk = descend(iv({k}), s_t);
        CHECK(fibre_functor(mk, s_t).characters[0] == iv({k}));
    }

    // mu_4 over Q(i): all four classes
    auto qi = ConstantsField::cyclotomic(4);
    auto ri = BaseDifferenceRing::shift_field(qi);
    Mat<RingElement> sys(2, std::vector<RingElement>(2, ri->zero()));
    sys[0][0] = ri->from_constant(qi->generator());
    sys[1][1] = ri->from_constant(-qi->generator());
    auto s4 = construct_pv(DifferenceModule::from_system_matrix(ri, sys));
    for (long a = 0; a < 4; ++a) {
        IVec chi = s4->lattice.reduce(iv({a, 0}));
        CHECK(fibre_functor(descend(chi, s4), s4).characters[0] == chi);
    }

    // representative independence: shifting chi by a lattice vector changes
    // the scalar by a coboundary only
    const IVec& lam = s_mu2->lattice.basis()[0];
    RingElement shift = s_mu2->tau_scalars[0].pow(static_cast<long>(lam[0].get_si()));
    CHECK(tau_coboundary(shift).has_value());
}
