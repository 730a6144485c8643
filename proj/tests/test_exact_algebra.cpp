#include "doctest.h"

#include <random>

#include "pvkit/field.hpp"
#include "pvkit/fpoly.hpp"
#include "pvkit/lattice.hpp"
#include "pvkit/qfactor.hpp"

using namespace pvkit;

namespace {

QPoly qp(std::initializer_list<long> ascending) {
    std::vector<Rat> c;
    for (long v : ascending) c.emplace_back(v);
    return QPoly(std::move(c));
}

QPoly random_qpoly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> degd(0, max_deg);
    std::uniform_int_distribution<long> cd(-9, 9);
    int d = degd(rng);
    std::vector<Rat> c(d + 1);
    for (auto& v : c) v = Rat(cd(rng));
    if (c.back() == 0) c.back() = 1;
    return QPoly(std::move(c));
}

} // namespace

TEST_CASE("rational helpers") {
    CHECK(rat_pow(Rat(2), 10) == Rat(1024));
    CHECK(rat_pow(Rat(2), -3) == Rat(1, 8));
    CHECK(rat_to_string(Rat(-3, 6)) == "-1/2");
    CHECK(rat_parse("7/2") == Rat(7, 2));
    CHECK(rat_log_exact(Rat(8), Rat(2)) == 3);
    CHECK(rat_log_exact(Rat(1, 4), Rat(2)) == -2);
    CHECK(!rat_log_exact(Rat(6), Rat(2)).has_value());
    auto f = rat_factor(Rat(-12, 35));
    CHECK(f.sign == -1);
    CHECK(f.exponents.at(2) == 2);
    CHECK(f.exponents.at(3) == 1);
    CHECK(f.exponents.at(5) == -1);
    CHECK(f.exponents.at(7) == -1);
}

TEST_CASE("poly_factor: x^2 - 1 over Q") {
    auto f = qpoly_factor(qp({-1, 0, 1}));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == qp({-1, 1}));
    CHECK(f.factors[1].first == qp({1, 1}));
    CHECK(f.factors[0].second == 1);
}

TEST_CASE("poly_factor: x^2 + 1 over Q stays irreducible, splits over Q(i)") {
    auto f = qpoly_factor(qp({1, 0, 1}));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == qp({1, 0, 1}));

    FieldPtr qi = ConstantsField::cyclotomic(4);
    FPoly p = FPoly::from_rational_poly(qi, qp({1, 0, 1}));
    auto ff = fpoly_factor(p);
    REQUIRE(ff.factors.size() == 2);
    // check by expansion
    FPoly prod = FPoly::constant(ff.unit);
    for (const auto& [fac, mult] : ff.factors)
        for (int j = 0; j < mult; ++j) prod = prod * fac;
    CHECK(prod == p);
    // the factors are x - i and x + i
    FieldElement i = qi->generator();
    CHECK(((ff.factors[0].first.coeff(0) == i && ff.factors[1].first.coeff(0) == -i) ||
           (ff.factors[0].first.coeff(0) == -i && ff.factors[1].first.coeff(0) == i)));
}

TEST_CASE("poly_factor: binomial cube") {
    auto f = qpoly_factor(qp({1, 3, 3, 1}));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == qp({1, 1}));
    CHECK(f.factors[0].second == 3);
}

TEST_CASE("poly_factor: zero input rejected") {
    CHECK_THROWS_AS(qpoly_factor(QPoly()), domain_error);
}

TEST_CASE("poly_factor: 500 random reconstructions") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 500; ++trial) {
        QPoly p = random_qpoly(rng, 8);
        if (p.is_zero()) continue;
        auto f = qpoly_factor(p);
        QPoly prod = QPoly::constant(f.unit);
        for (const auto& [fac, mult] : f.factors)
            for (int j = 0; j < mult; ++j) prod = prod * fac;
        REQUIRE(prod == p);
        for (const auto& [fac, mult] : f.factors)
            REQUIRE(qpoly_is_irreducible(fac));
    }
}

TEST_CASE("root_of_unity_order") {
    FieldPtr q = ConstantsField::rationals();
    CHECK(root_of_unity_order(q->one()) == 1);
    CHECK(root_of_unity_order(q->from_long(-1)) == 2);
    CHECK(!root_of_unity_order(q->from_long(2)).has_value());
    CHECK_THROWS_AS(root_of_unity_order(q->zero()), domain_error);

    FieldPtr qi = ConstantsField::cyclotomic(4);
    CHECK(root_of_unity_order(qi->generator()) == 4);
    CHECK(!root_of_unity_order(qi->from_long(2)).has_value());

    FieldPtr z12 = ConstantsField::cyclotomic(12);
    CHECK(root_of_unity_order(z12->generator()) == 12);
    // order check property: c^k = 1 and no smaller power
    auto ord = root_of_unity_order(z12->generator().pow(8));
    REQUIRE(ord.has_value());
    FieldElement c = z12->generator().pow(8);
    CHECK(c.pow(*ord).is_one());
    for (long j = 1; j < *ord; ++j) CHECK(!c.pow(j).is_one());
}

TEST_CASE("field element arithmetic satisfies field axioms") {
    std::mt19937_64 rng(99);
    FieldPtr z12 = ConstantsField::cyclotomic(12);
    std::uniform_int_distribution<long> cd(-5, 5);
    auto rand_elt = [&] {
        std::vector<Rat> c(z12->degree());
        for (auto& v : c) v = Rat(cd(rng));
        return z12->element(std::move(c));
    };
    for (int trial = 0; trial < 100; ++trial) {
        FieldElement a = rand_elt(), b = rand_elt(), c = rand_elt();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("smith_normal_form examples") {
    SUBCASE("diag(2,3) -> diag(1,6)") {
        IMat a = {{Int(2), Int(0)}, {Int(0), Int(3)}};
        SmithForm s = smith_normal_form(a);
        CHECK(s.invariant_factors == std::vector<Int>{Int(1), Int(6)});
        CHECK(imat_mul(imat_mul(s.u, a), s.v) == s.d);
        CHECK(abs(imat_det(s.u)) == 1);
        CHECK(abs(imat_det(s.v)) == 1);
    }
    SUBCASE("identity") {
        IMat a = imat_identity(3);
        SmithForm s = smith_normal_form(a);
        CHECK(s.invariant_factors == std::vector<Int>{Int(1), Int(1), Int(1)});
    }
    SUBCASE("[[4]]") {
        IMat a = {{Int(4)}};
        SmithForm s = smith_normal_form(a);
        CHECK(s.invariant_factors == std::vector<Int>{Int(4)});
    }
}

TEST_CASE("smith_normal_form randomized witness checks") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<long> val(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = dim(rng), n = dim(rng);
        IMat a(m, IVec(n));
        for (auto& row : a)
            for (auto& x : row) x = Int(val(rng));
        SmithForm s = smith_normal_form(a);
        REQUIRE(imat_mul(imat_mul(s.u, a), s.v) == s.d);
        REQUIRE(abs(imat_det(s.u)) == 1);
        REQUIRE(abs(imat_det(s.v)) == 1);
        for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
            const Int& d1 = s.invariant_factors[i];
            const Int& d2 = s.invariant_factors[i + 1];
            if (d1 != 0) REQUIRE(d2 % d1 == 0);
            else REQUIRE(d2 == 0);
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) REQUIRE(s.d[i][j] == 0);
    }
}

TEST_CASE("integer_kernel") {
    SUBCASE("[[1,-1]]") {
        auto k = integer_kernel({{Int(1), Int(-1)}});
        REQUIRE(k.size() == 1);
        CHECK(abs(k[0][0]) == 1);
        CHECK(k[0][0] == k[0][1]);
    }
    SUBCASE("[[0,0]] is full") {
        auto k = integer_kernel({{Int(0), Int(0)}});
        CHECK(k.size() == 2);
    }
    SUBCASE("[[2,4],[1,2]]") {
        auto k = integer_kernel({{Int(2), Int(4)}, {Int(1), Int(2)}});
        REQUIRE(k.size() == 1);
        CHECK(2 * k[0][0] + 4 * k[0][1] == 0);
        CHECK(abs(k[0][1]) == 1);
    }
}

TEST_CASE("field_join") {
    FieldPtr q = ConstantsField::rationals();
    FieldPtr qi = ConstantsField::cyclotomic(4);
    FieldPtr z3 = ConstantsField::cyclotomic(3);

    SUBCASE("join(Q, Q(i)) = Q(i)") {
        FieldJoin j = field_join(q, qi);
        CHECK(same_field(j.field, qi));
        CHECK(j.embed_first.apply(q->from_long(5)) == qi->from_long(5));
    }
    SUBCASE("join(Q(zeta_3), Q(i)) = Q(zeta_12)") {
        FieldJoin j = field_join(z3, qi);
        REQUIRE(j.field->cyclotomic_order() == 12);
        // embeddings are ring homomorphisms on generators
        FieldElement z3im = j.embed_first.apply(z3->generator());
        CHECK(z3im.pow(3).is_one());
        CHECK(!z3im.is_one());
        FieldElement iim = j.embed_second.apply(qi->generator());
        CHECK(iim.pow(2) == -j.field->one());
        // homomorphism spot checks
        FieldElement a = z3->generator() + z3->from_long(2);
        FieldElement b = z3->generator() * z3->from_long(3);
        CHECK(j.embed_first.apply(a * b) ==
              j.embed_first.apply(a) * j.embed_first.apply(b));
        CHECK(j.embed_first.apply(a + b) ==
              j.embed_first.apply(a) + j.embed_first.apply(b));
    }
    SUBCASE("join(F, F) = F") {
        FieldJoin j = field_join(qi, qi);
        CHECK(same_field(j.field, qi));
        CHECK(j.embed_first.apply(qi->generator()) == qi->generator());
    }
    SUBCASE("unsupported compositum") {
        FieldPtr sqrt2 = ConstantsField::number_field(qp({-2, 0, 1}), "a");
        FieldPtr sqrt3 = ConstantsField::number_field(qp({-3, 0, 1}), "b");
        CHECK_THROWS_AS(field_join(sqrt2, sqrt3), domain_error);
    }
}

TEST_CASE("roots_of_unity_of and decompose_constant") {
    FieldPtr q = ConstantsField::rationals();
    auto mu = roots_of_unity_of(q);
    CHECK(mu.order == 2);
    CHECK(mu.generator == q->from_long(-1));

    FieldPtr qi = ConstantsField::cyclotomic(4);
    auto mui = roots_of_unity_of(qi);
    CHECK(mui.order == 4);

    FieldPtr z3 = ConstantsField::cyclotomic(3);
    CHECK(roots_of_unity_of(z3).order == 6);

    auto d = decompose_constant(qi->from_long(-6));
    REQUIRE(d.has_value());
    CHECK(d->torsion_order == 4);
    CHECK(d->torsion_exponent == 2);
    CHECK(d->positive_rational == 6);

    auto d2 = decompose_constant(qi->generator() * qi->from_rational(Rat(3, 2)));
    REQUIRE(d2.has_value());
    CHECK(d2->torsion_exponent == 1);
    CHECK(d2->positive_rational == Rat(3, 2));

    // 1 + i is not a root of unity times a rational
    auto d3 = decompose_constant(qi->generator() + qi->one());
    CHECK(!d3.has_value());
}

TEST_CASE("number_field rejects reducible minimal polynomials") {
    CHECK_THROWS_AS(ConstantsField::number_field(qp({-1, 0, 1}), "a"), domain_error);
}

TEST_CASE("cyclotomic recognition collapses to the cyclotomic tower") {
    FieldPtr f = ConstantsField::number_field(qp({1, 0, 1}), "j");
    CHECK(f->cyclotomic_order() == 4);
}
