// Acceptance gate: one line per criterion, all exact (tolerance 0).
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "pvkit/basechange.hpp"
#include "pvkit/errors.hpp"
#include "pvkit/galois.hpp"
#include "pvkit/session.hpp"

using namespace pvkit;

namespace {

int failures = 0;

void report(int num, const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << name << "\n";
    if (!ok) ++failures;
}

RingElement rfe(const RingPtr& r, std::vector<long> num, std::vector<long> den) {
    const FieldPtr& k = r->coefficient_field();
    auto mk = [&](const std::vector<long>& cs) {
        std::vector<FieldElement> c;
        for (long v : cs) c.push_back(k->from_long(v));
        return FPoly(k, std::move(c));
    };
    return r->from_rat_func(RatFunc(mk(num), mk(den)));
}

RingElement shift_product(const RingPtr& r, const Rat& c, const std::vector<long>& shifts,
                          const std::vector<long>& exps) {
    const FieldPtr& k = r->coefficient_field();
    RatFunc f = RatFunc::constant(k->from_rational(c));
    for (std::size_t i = 0; i < shifts.size(); ++i)
        f = f * RatFunc::from_poly(FPoly(k, {k->from_long(shifts[i]), k->one()})).pow(exps[i]);
    return r->from_rat_func(f);
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

// degree-bounded ansatz: dimension of tau-fixed polynomials of degree <= cap
std::size_t fixed_poly_dimension(const RingPtr& r, int cap) {
    const FieldPtr& k = r->coefficient_field();
    if (r->kind() == RingKind::cyclic_product) {
        std::size_t n = static_cast<std::size_t>(r->tuple_size());
        Mat<FieldElement> m(n, std::vector<FieldElement>(n, k->zero()));
        for (std::size_t i = 0; i < n; ++i) {
            m[i][i] = m[i][i] + k->one();
            m[i][r->permutation()[i]] = m[i][r->permutation()[i]] - k->one();
        }
        return mat_kernel(m, k->zero(), k->one()).size();
    }
    // rows: coefficient i of p(tau x) - p(x), unknowns c_0..c_cap
    std::size_t n = static_cast<std::size_t>(cap) + 1;
    Mat<FieldElement> m(n, std::vector<FieldElement>(n, k->zero()));
    for (std::size_t j = 0; j < n; ++j) {
        FPoly mono = FPoly::x(k).pow(static_cast<long>(j));
        FPoly image = r->kind() == RingKind::q_dilation_field
                          ? mono.scale_arg(k->from_rational(r->q()))
                          : mono.shift(k->one());
        FPoly diff = image - mono;
        for (std::size_t i = 0; i < n; ++i)
            m[i][j] = static_cast<long>(i) <= diff.degree() ? diff.coeff(i) : k->zero();
    }
    return mat_kernel(m, k->zero(), k->one()).size();
}

bool constants_match_oracle(const RingPtr& r) {
    ConstantsInfo ci = constants_of(r);
    return same_field(ci.field, r->coefficient_field()) && fixed_poly_dimension(r, 8) == 1;
}

} // namespace

int main(int argc, char** argv) {
    std::string golden_dir = argc > 1 ? argv[1] : "tests/golden";
    auto q = ConstantsField::rationals();
    auto qi = ConstantsField::cyclotomic(4);
    auto shift_q = BaseDifferenceRing::shift_field(q);
    auto shift_qi = BaseDifferenceRing::shift_field(qi);

    // 1. constants suite
    try {
        bool ok = constants_match_oracle(shift_q) && constants_match_oracle(shift_qi) &&
                  constants_match_oracle(BaseDifferenceRing::q_dilation_field(q, Rat(2))) &&
                  constants_match_oracle(BaseDifferenceRing::cyclic_product_cycle(q, 3));
        report(1, "constants match the degree-8 ansatz oracle", ok);
    } catch (const std::exception& e) {
        report(1, std::string("constants suite: ") + e.what(), false);
    }

    // 2. total fractions
    try {
        auto r1 = BaseDifferenceRing::shift_poly(q);
        auto f1 = total_fractions_check(r1);
        auto r2 = BaseDifferenceRing::cyclic_product_cycle(qi, 3);
        auto f2 = total_fractions_check(r2);
        bool ok = same_field(constants_of(f1.s).field, q) && constants_match_oracle(f1.s) &&
                  same_field(constants_of(f2.s).field, qi) && constants_match_oracle(f2.s);
        report(2, "total fractions of simple rings keep C_S = C_R", ok);
    } catch (const std::exception& e) {
        report(2, std::string("total fractions: ") + e.what(), false);
    }

    // 3. coboundary suite with the rational-solver oracle (degree cap 6)
    try {
        std::mt19937_64 rng(909);
        std::uniform_int_distribution<long> sd(-3, 3), ed(-2, 2);
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            std::vector<long> shifts = {sd(rng), sd(rng), sd(rng)};
            std::vector<long> exps = {ed(rng), ed(rng), ed(rng)};
            RingElement r0 = shift_product(shift_q, Rat(1), shifts, exps);
            RingElement a = tau_apply(r0) * r0.inverse();
            auto w = tau_coboundary(a);
            ok = w && tau_apply(*w) * w->inverse() == a;
            Mat<RatFunc> b(1, {a.rat_func()});
            ok = ok && rational_system_solutions(shift_q, b, 6).size() == 1;
        }
        for (int trial = 0; trial < 200 && ok; ++trial) {
            std::vector<long> exps = {ed(rng), ed(rng), ed(rng)};
            if (exps[0] + exps[1] + exps[2] == 0) exps[0] += 1;
            RingElement a = shift_product(shift_q, Rat(1), {sd(rng), sd(rng), sd(rng)}, exps);
            ok = !tau_coboundary(a).has_value();
            Mat<RatFunc> b(1, {a.rat_func()});
            ok = ok && rational_system_solutions(shift_q, b, 6).empty();
        }
        report(3, "coboundary recovery and refusal, cross-checked by the solver", ok);
    } catch (const std::exception& e) {
        report(3, std::string("coboundary suite: ") + e.what(), false);
    }

    // 4. rank-1 galois table and the rotation pipeline
    PVPtr s_mu2, s_mu4, s_torus;
    try {
        auto g1 = galois_group(scalar_system(shift_q, shift_q->one()));
        auto g2 = galois_group(scalar_system(shift_q, rfe(shift_q, {1, 1}, {0, 1})));
        auto m_mu2 = scalar_system(shift_q, shift_q->from_rational(Rat(-1)));
        s_mu2 = construct_pv(m_mu2);
        auto g3 = galois_group(s_mu2);
        auto m_torus = scalar_system(shift_q, shift_q->from_rational(Rat(2)));
        s_torus = construct_pv(m_torus);
        auto g4 = galois_group(s_torus);
        auto g5 = galois_group(scalar_system(shift_q, shift_q->x()));
        Mat<RingElement> rot(2, std::vector<RingElement>(2, shift_q->zero()));
        rot[0][1] = shift_q->from_rational(Rat(-1));
        rot[1][0] = shift_q->one();
        auto split = split_and_analyze(DifferenceModule::from_system_matrix(shift_q, rot));
        s_mu4 = construct_pv(split.diagonal);
        auto g6 = galois_group(s_mu4);
        bool ok = g1.is_trivial() && g2.is_trivial() &&
                  g3.invariant_factors() == std::vector<long>{2} && g3.torus_rank() == 0 &&
                  g4.torus_rank() == 1 && g4.invariant_factors().empty() &&
                  g5.torus_rank() == 1 && g5.invariant_factors().empty() &&
                  g6.invariant_factors() == std::vector<long>{4} && g6.torus_rank() == 0 &&
                  g6.field->cyclotomic_order() == 4;
        report(4, "rank-1 galois table and rotation matrix give the expected groups", ok);
    } catch (const std::exception& e) {
        report(4, std::string("galois table: ") + e.what(), false);
    }

    // 5. PV verification gate
    try {
        bool ok = true;
        std::vector<std::pair<DifferenceModule, PVPtr>> corpus;
        auto add = [&](const DifferenceModule& m) { corpus.emplace_back(m, construct_pv(m)); };
        add(scalar_system(shift_q, shift_q->one()));
        add(scalar_system(shift_q, shift_q->from_rational(Rat(-1))));
        add(scalar_system(shift_q, shift_q->from_rational(Rat(2))));
        add(scalar_system(shift_q, rfe(shift_q, {1, 1}, {0, 1})));
        auto rq4 = BaseDifferenceRing::q_dilation_field(q, Rat(4));
        add(scalar_system(rq4, rq4->from_rational(Rat(2))));
        for (const auto& [m, s] : corpus) ok = ok && verify_pv(s, m).all_pass();
        auto bad = make_presentation(shift_q, {shift_q->from_rational(Rat(-1))},
                                     {{iv({4}), shift_q->one()}});
        auto vr = verify_pv(bad, scalar_system(shift_q, shift_q->from_rational(Rat(-1))));
        ok = ok && vr.a.pass && !vr.b.pass && !vr.c.pass && vr.d.pass && vr.e.pass &&
             vr.witness_ideal && vr.witness_ideal->first == iv({2}) &&
             vr.witness_ideal->second.is_one();
        report(5, "verify_pv gate: corpus passes, mutated t^4=1 fails (b) and (c)", ok);
    } catch (const std::exception& e) {
        report(5, std::string("verification gate: ") + e.what(), false);
    }

    // 6. uniqueness of PV presentations
    try {
        std::vector<DifferenceModule> gens = {
            scalar_system(shift_q, shift_q->from_rational(Rat(-1))),
            scalar_system(shift_q, rfe(shift_q, {1, 1}, {0, 1})),
            scalar_system(shift_q, shift_q->from_rational(Rat(2)))};
        auto ref = universal_pv(gens);
        std::mt19937_64 rng(1618);
        bool ok = true;
        for (int pair = 0; pair < 10 && ok; ++pair) {
            std::vector<DifferenceModule> shuffled = gens;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            pv_isomorphism(ref, universal_pv(shuffled)); // throws on failure
        }
        // an alternative hand-built presentation of the same module
        auto alt = make_presentation(shift_q, {shift_q->from_rational(Rat(-1))},
                                     {{iv({2}), shift_q->from_rational(Rat(4))}});
        pv_isomorphism(s_mu2, alt);
        report(6, "pv_isomorphism links independently constructed presentations", ok);
    } catch (const std::exception& e) {
        report(6, std::string("uniqueness: ") + e.what(), false);
    }

    // 7. tannakian monoidality on 50 random pairs
    try {
        auto s = universal_pv({scalar_system(shift_q, shift_q->from_rational(Rat(-1))),
                               scalar_system(shift_q, shift_q->from_rational(Rat(2)))});
        std::size_t n = s->tau_scalars.size();
        std::mt19937_64 rng(7001);
        std::uniform_int_distribution<long> cd(-4, 4);
        bool ok = true;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            IVec c1(n, 0), c2(n, 0);
            for (auto& x : c1) x = cd(rng);
            for (auto& x : c2) x = cd(rng);
            auto n1 = descend(c1, s);
            auto n2 = descend(c2, s);
            auto pr = construct(ModuleConstruction::tensor, n1, &n2);
            auto r1 = fibre_functor(n1, s);
            auto r2 = fibre_functor(n2, s);
            auto rp = fibre_functor(pr, s);
            ok = rp.dimension == r1.dimension * r2.dimension;
            IVec sum(n, 0);
            for (std::size_t i = 0; i < n; ++i) sum[i] = r1.characters[0][i] + r2.characters[0][i];
            ok = ok && rp.characters[0] == s->lattice.reduce(sum);
            auto rd = fibre_functor(construct(ModuleConstruction::dual, n1, nullptr), s);
            IVec neg(n, 0);
            for (std::size_t i = 0; i < n; ++i) neg[i] = -r1.characters[0][i];
            ok = ok && rd.characters[0] == s->lattice.reduce(neg);
        }
        report(7, "fibre functor is monoidal and sends duals to inverse characters", ok);
    } catch (const std::exception& e) {
        report(7, std::string("tannakian suite: ") + e.what(), false);
    }

    // 8. descent round trips
    try {
        bool ok = true;
        for (long a = 0; a < 2 && ok; ++a) {
            IVec chi = s_mu2->lattice.reduce(iv({a}));
            ok = fibre_functor(descend(chi, s_mu2), s_mu2).characters[0] == chi;
        }
        for (long a = 0; a < 4 && ok; ++a) {
            IVec chi = s_mu4->lattice.reduce(iv({a, 0}));
            ok = fibre_functor(descend(chi, s_mu4), s_mu4).characters[0] == chi;
        }
        for (long k = -10; k < 10 && ok; ++k) {
            auto d = descend(iv({k}), s_torus);
            auto rep = fibre_functor(d, s_torus); // dimension 1 = rank: trivial over S
            ok = rep.characters[0] == iv({k}) && rep.dimension == 1;
        }
        report(8, "fibre_functor(descend(chi)) = chi on all finite and 20 torus characters", ok);
    } catch (const std::exception& e) {
        report(8, std::string("descent: ") + e.what(), false);
    }

    // 9. automorphism counts and fixed subrings
    try {
        auto c2 = automorphism_count_check(s_mu2);
        auto c4 = automorphism_count_check(s_mu4);
        bool ok = c2.count == 2 && c2.expected == 2 && c4.count == 4 && c4.expected == 4;
        for (const auto& s : {s_mu2, s_mu4, s_torus}) {
            auto rep = fixed_subring_check(s, galois_group(s));
            ok = ok && rep.pass && !rep.trace.empty();
        }
        report(9, "|Aut(S/R)| matches the group order; fixed subring is R", ok);
    } catch (const std::exception& e) {
        report(9, std::string("automorphisms: ") + e.what(), false);
    }

    // 10. base change
    try {
        auto zeta3 = ConstantsField::cyclotomic(3);
        bool ok = true;
        auto e1 = extend_constants(shift_q, qi);
        ok = same_field(constants_of(e1.ring).field, qi);
        auto e2 = extend_constants(BaseDifferenceRing::cyclic_product_cycle(q, 2), qi);
        ok = ok && same_field(constants_of(e2.ring).field, qi);
        auto e3 = extend_constants(BaseDifferenceRing::q_dilation_field(q, Rat(2)), zeta3);
        ok = ok && same_field(constants_of(e3.ring).field, zeta3);
        ok = ok && galois_commutation_check(e1, 2026).pass;
        ok = ok && galois_commutation_check(e3, 2026).pass;
        report(10, "extend_constants yields C' and tau commutes with Gal(C'/C)", ok);
    } catch (const std::exception& e) {
        report(10, std::string("base change: ") + e.what(), false);
    }

    // 11. solver oracle on 100 random inhomogeneous instances
    try {
        std::mt19937_64 rng(271828);
        std::uniform_int_distribution<long> sd(-2, 2), ed(-1, 1);
        std::uniform_int_distribution<int> cd(0, 1);
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            RingElement y0 = shift_product(shift_q, Rat(1), {sd(rng), sd(rng)}, {ed(rng), ed(rng)});
            RingElement a = shift_product(shift_q, cd(rng) ? Rat(1) : Rat(2), {sd(rng), sd(rng)},
                                          {ed(rng), ed(rng)});
            RingElement b = tau_apply(y0) - a * y0;
            auto sol = scalar_rational_solutions(shift_q, a, b, 10);
            ok = sol.particular.has_value();
            if (!ok) break;
            ok = tau_apply(*sol.particular) == a * *sol.particular + b;
            for (const auto& h : sol.homogeneous) ok = ok && tau_apply(h) == a * h;
            RingElement res = y0 - *sol.particular;
            if (res.is_zero()) continue;
            // residual solves the homogeneous equation: must lie in the span
            ok = ok && sol.homogeneous.size() == 1 &&
                 (res * sol.homogeneous[0].inverse()).rat_func().is_constant();
        }
        report(11, "scalar solver agrees with planted solutions and spans residuals", ok);
    } catch (const std::exception& e) {
        report(11, std::string("solver: ") + e.what(), false);
    }

    // 12. kernel algebra: SNF witnesses and polynomial factorization
    try {
        std::mt19937_64 rng(5150);
        std::uniform_int_distribution<long> md(-9, 9);
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            std::size_t m = dim(rng), n = dim(rng);
            IMat a(m, IVec(n, 0));
            for (auto& row : a)
                for (auto& x : row) x = md(rng);
            SmithForm s = smith_normal_form(a);
            ok = imat_mul(imat_mul(s.u, a), s.v) == s.d;
            Int du = imat_det(s.u), dv = imat_det(s.v);
            ok = ok && (du == 1 || du == -1) && (dv == 1 || dv == -1);
            for (std::size_t i = 0; i + 1 < s.rank; ++i)
                ok = ok && s.d[i + 1][i + 1] % s.d[i][i] == 0;
        }
        std::uniform_int_distribution<long> pc(-6, 6);
        for (int trial = 0; trial < 500 && ok; ++trial) {
            const FieldPtr& k = trial % 5 == 0 ? qi : q;
            std::vector<FieldElement> cs;
            for (int i = 0; i < 6; ++i) cs.push_back(k->from_long(pc(rng)));
            FPoly p(k, std::move(cs));
            if (p.is_zero()) continue;
            auto fac = fpoly_factor(p);
            FPoly rebuilt = FPoly::constant(fac.unit);
            for (const auto& [f, mult] : fac.factors) {
                ok = ok && f.coeff(f.degree()).is_one();
                rebuilt = rebuilt * f.pow(mult);
            }
            ok = ok && rebuilt == p;
        }
        report(12, "SNF witnesses re-multiply; factor products reconstruct inputs", ok);
    } catch (const std::exception& e) {
        report(12, std::string("kernel algebra: ") + e.what(), false);
    }

    // 13. CLI golden file
    try {
        std::ifstream prog(golden_dir + "/worked_example.pv");
        std::ifstream gold(golden_dir + "/worked_example.json");
        bool ok = prog.good() && gold.good();
        if (ok) {
            std::ostringstream ps, gs;
            ps << prog.rdbuf();
            gs << gold.rdbuf();
            SessionOptions opt;
            opt.json = true;
            RunResult r1 = run_program(ps.str(), opt);
            RunResult r2 = run_program(ps.str(), opt);
            ok = r1.exit_code == 0 && r1.output == gs.str() && r2.output == r1.output;
        }
        report(13, "worked-example script reproduces byte-identical JSON", ok);
    } catch (const std::exception& e) {
        report(13, std::string("golden files: ") + e.what(), false);
    }

    if (failures == 0) std::cout << "all 13 criteria pass\n";
    return failures == 0 ? 0 : 1;
}
