#include <numeric>

#include "pvkit/fpoly.hpp"
#include "pvkit/qfactor.hpp"

namespace pvkit {

namespace {

// canonical root choice: smallest linear factor in the sorted factorization
std::optional<FieldElement> root_in_field(const QPoly& p, const FieldPtr& k) {
    auto roots = fpoly_roots_in_field(FPoly::from_rational_poly(k, p));
    if (roots.empty()) return std::nullopt;
    return roots.front().first;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

} // namespace

FieldJoin field_join(const FieldPtr& f1, const FieldPtr& f2) {
    if (same_field(f1, f2))
        return {f1, FieldEmbedding::identity(f1), FieldEmbedding::identity(f1)};
    if (f1->is_rationals())
        return {f2, FieldEmbedding(f1, f2, f2->one()), FieldEmbedding::identity(f2)};
    if (f2->is_rationals())
        return {f1, FieldEmbedding::identity(f1), FieldEmbedding(f2, f1, f1->one())};

    auto c1 = f1->cyclotomic_order();
    auto c2 = f2->cyclotomic_order();
    if (c1 && c2) {
        long n = lcm_long(*c1, *c2);
        FieldPtr target = (n == *c1) ? f1 : (n == *c2) ? f2 : ConstantsField::cyclotomic(n);
        FieldElement z = target->generator();
        long nt = *target->cyclotomic_order();
        return {target,
                FieldEmbedding(f1, target, z.pow(nt / *c1)),
                FieldEmbedding(f2, target, z.pow(nt / *c2))};
    }
    if (auto r = root_in_field(f1->minimal_polynomial(), f2))
        return {f2, FieldEmbedding(f1, f2, *r), FieldEmbedding::identity(f2)};
    if (auto r = root_in_field(f2->minimal_polynomial(), f1))
        return {f1, FieldEmbedding::identity(f1), FieldEmbedding(f2, f1, *r)};
    throw domain_error("unsupported extension: no compositum of " + f1->name() +
                       " and " + f2->name() + " in the supported tower");
}

RootsOfUnity roots_of_unity_of(const FieldPtr& k) {
    if (k->is_rationals()) return {2, k->from_long(-1)};
    if (auto n = k->cyclotomic_order()) {
        if (*n % 2 == 0) return {*n, k->generator()};
        // odd order: -zeta^((n+1)/2) is a primitive 2n-th root
        return {2 * *n, -(k->generator().pow((*n + 1) / 2))};
    }
    // generic number field: the torsion order M satisfies phi(M) <= degree
    long d = k->degree();
    long best = 2;
    FieldElement gen = k->from_long(-1);
    for (long m = 3; m <= 2 * d * d + 4; ++m) {
        if (euler_phi(m) > d || m <= best) continue;
        if (best % m == 0) continue;
        auto roots = fpoly_roots_in_field(
            FPoly::from_rational_poly(k, cyclotomic_polynomial(m)));
        if (!roots.empty()) {
            best = m;
            gen = roots.front().first;
        }
    }
    return {best, gen};
}

std::optional<ConstantDecomposition> decompose_constant(const FieldElement& c) {
    if (c.is_zero()) throw domain_error("decompose_constant: zero input");
    if (c.is_rational()) {
        Rat r = c.rational_value();
        RootsOfUnity mu = roots_of_unity_of(c.field());
        if (r > 0) return ConstantDecomposition{mu.order, 0, r};
        // -1 = g^(order/2)
        return ConstantDecomposition{mu.order, mu.order / 2, -r};
    }
    RootsOfUnity mu = roots_of_unity_of(c.field());
    FieldElement g_inv = mu.generator.inverse();
    FieldElement t = c;
    for (long e = 0; e < mu.order; ++e) {
        if (t.is_rational()) {
            Rat r = t.rational_value();
            if (r > 0) return ConstantDecomposition{mu.order, e, r};
            long e2 = (e + mu.order / 2) % mu.order;
            return ConstantDecomposition{mu.order, e2, -r};
        }
        t = t * g_inv;
    }
    return std::nullopt;
}

} // namespace pvkit
