#include "pvkit/basechange.hpp"

#include <algorithm>
#include <random>

#include "pvkit/errors.hpp"

namespace pvkit {

namespace {

RingPtr rebuild_with_field(const RingPtr& r, const FieldPtr& k) {
    switch (r->kind()) {
    case RingKind::shift_field: return BaseDifferenceRing::shift_field(k);
    case RingKind::q_dilation_field: return BaseDifferenceRing::q_dilation_field(k, r->q());
    case RingKind::shift_poly: return BaseDifferenceRing::shift_poly(k);
    case RingKind::cyclic_product: return BaseDifferenceRing::cyclic_product(k, r->permutation());
    }
    throw internal_error("unknown ring kind");
}

RingElement sigma_apply(const RingPtr& r, const FieldEmbedding& sigma, const RingElement& e) {
    if (e.holds_rat_func()) return r->from_rat_func(e.rat_func().map_coefficients(sigma));
    if (e.holds_poly()) return r->from_poly(e.poly().map_coefficients(sigma));
    std::vector<FieldElement> t;
    for (const auto& c : e.tuple()) t.push_back(sigma.apply(c));
    return r->from_tuple(std::move(t));
}

// automorphisms of C' over Q: generator images are the roots of the
// minimal polynomial inside C'
std::vector<FieldEmbedding> all_automorphisms(const FieldPtr& k) {
    if (k->is_rationals()) return {FieldEmbedding::identity(k)};
    FPoly mp = FPoly::from_rational_poly(k, k->minimal_polynomial());
    std::vector<FieldEmbedding> out;
    long linear = 0;
    for (const auto& [f, mult] : fpoly_factor(mp).factors) {
        if (f.degree() != 1) continue;
        linear += mult;
        out.emplace_back(k, k, -f.coeff(0));
    }
    if (linear != mp.degree()) throw domain_error("unsupported: non-normal");
    return out;
}

} // namespace

ExtendedRing extend_constants(const RingPtr& r, const FieldPtr& cprime) {
    const FieldPtr& k = r->coefficient_field();
    FieldJoin join = field_join(k, cprime);
    if (!same_field(join.field, cprime))
        throw domain_error("extension does not contain the current constants");
    ExtendedRing ext{rebuild_with_field(r, join.field), join.embed_first, {}};
    // the claim C_S = C' is recomputed, not assumed
    ConstantsInfo ci = constants_of(ext.ring);
    if (!same_field(ci.field, cprime))
        throw internal_error("constants of the extended ring are not C'");
    ext.report.push_back("extended " + r->name() + " to " + ext.ring->name());
    ext.report.push_back("constants recomputed: " + ci.field->name());
    return ext;
}

RingElement base_extend(const ExtendedRing& ext, const RingElement& e) {
    if (same_ring(e.ring(), ext.ring)) return e;
    return sigma_apply(ext.ring, ext.embedding, e);
}

CommutationReport galois_commutation_check(const ExtendedRing& ext, std::uint64_t seed,
                                           const std::vector<RingElement>& session_elements) {
    CommutationReport rep;
    const RingPtr& r = ext.ring;
    const FieldPtr& kp = r->coefficient_field();
    FieldElement fixed = ext.embedding.apply(ext.embedding.source()->generator());
    std::vector<FieldEmbedding> gal;
    for (const auto& sigma : all_automorphisms(kp))
        if (sigma.apply(fixed) == fixed) gal.push_back(sigma);
    rep.automorphisms = gal.size();
    rep.trace.push_back("Gal(" + kp->name() + "/" + ext.embedding.source()->name() + ") has " +
                        std::to_string(gal.size()) + " elements");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> cd(-5, 5);
    auto rand_const = [&] {
        FieldElement c = kp->zero();
        for (int j = 0; j < kp->degree(); ++j)
            c = c + kp->generator().pow(j) * kp->from_rational(Rat(cd(rng)));
        return c;
    };
    auto rand_poly = [&] {
        std::vector<FieldElement> cs;
        for (int j = 0; j < 3; ++j) cs.push_back(rand_const());
        return FPoly(kp, std::move(cs));
    };
    auto rand_element = [&]() -> RingElement {
        switch (r->kind()) {
        case RingKind::shift_field:
        case RingKind::q_dilation_field: {
            FPoly den = rand_poly();
            while (den.is_zero()) den = rand_poly();
            return r->from_rat_func(RatFunc(rand_poly(), den));
        }
        case RingKind::shift_poly: return r->from_poly(rand_poly());
        case RingKind::cyclic_product: {
            std::vector<FieldElement> t;
            for (int j = 0; j < r->tuple_size(); ++j) t.push_back(rand_const());
            return r->from_tuple(std::move(t));
        }
        }
        throw internal_error("unknown ring kind");
    };

    std::vector<RingElement> pool;
    for (int i = 0; i < 100; ++i) pool.push_back(rand_element());
    for (const auto& e : session_elements) pool.push_back(base_extend(ext, e));
    rep.pass = true;
    for (const auto& sigma : gal)
        for (const auto& e : pool)
            if (sigma_apply(r, sigma, tau_apply(e)) != tau_apply(sigma_apply(r, sigma, e)) ||
                sigma_apply(r, sigma, tau_apply(e, -1)) !=
                    tau_apply(sigma_apply(r, sigma, e), -1)) {
                rep.pass = false;
                rep.trace.push_back("commutation failed on " + e.to_string());
                return rep;
            }
    rep.trace.push_back("sigma tau = tau sigma on " + std::to_string(pool.size()) +
                        " elements, exactly");
    return rep;
}

SplitResult split_and_analyze(const DifferenceModule& m) {
    const RingPtr& r = m.base();
    if (r->kind() == RingKind::cyclic_product)
        throw domain_error("outside diagonalizable scope: product base");
    const FieldPtr& k = r->coefficient_field();
    std::size_t n = static_cast<std::size_t>(m.rank());

    bool already_diagonal = true;
    for (std::size_t i = 0; i < n && already_diagonal; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !m.system_matrix()[i][j].is_zero()) { already_diagonal = false; break; }
    if (already_diagonal) {
        SplitResult res{k,
                        extend_constants(r, k),
                        m,
                        {},
                        Mat<RingElement>(n, std::vector<RingElement>(n, r->zero())),
                        Mat<RingElement>(n, std::vector<RingElement>(n, r->zero())),
                        k->minimal_polynomial(),
                        {"already diagonal: no extension needed"}};
        for (std::size_t i = 0; i < n; ++i) {
            res.p[i][i] = r->one();
            res.p_inv[i][i] = r->one();
            const RingElement& e = m.system_matrix()[i][i];
            if (e.holds_rat_func() && e.rat_func().is_constant())
                res.eigenvalues.push_back(e.rat_func().constant_value());
        }
        return res;
    }

    Mat<FieldElement> b(n, std::vector<FieldElement>(n, k->zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const RingElement& e = m.system_matrix()[i][j];
            bool constant = e.holds_rat_func() ? e.rat_func().is_constant()
                                               : (e.holds_poly() && e.poly().degree() <= 0);
            if (!constant)
                throw domain_error("outside diagonalizable scope: non-constant entries");
            b[i][j] = e.holds_rat_func() ? e.rat_func().constant_value()
                                         : (e.poly().degree() < 0 ? k->zero() : e.poly().coeff(0));
        }

    // characteristic polynomial by Faddeev-LeVerrier (division by integers only)
    std::vector<FieldElement> c(n + 1, k->zero());
    c[n] = k->one();
    Mat<FieldElement> mk = b;
    auto trace_of = [&](const Mat<FieldElement>& a) {
        FieldElement t = k->zero();
        for (std::size_t i = 0; i < n; ++i) t = t + a[i][i];
        return t;
    };
    for (std::size_t step = 1; step <= n; ++step) {
        if (step > 1) {
            for (std::size_t i = 0; i < n; ++i) mk[i][i] = mk[i][i] + c[n - step + 1];
            mk = mat_mul(b, mk, k->zero());
        }
        c[n - step] = -(trace_of(mk) / k->from_long(static_cast<long>(step)));
    }
    FPoly charpoly(k, c);
    if (fpoly_gcd(charpoly, charpoly.derivative()).degree() > 0)
        throw domain_error("outside diagonalizable scope: repeated eigenvalues");

    // splitting field: one extension step, preferring a cyclotomic label
    FieldPtr cp = k;
    for (const auto& [f, mult] : fpoly_factor(charpoly).factors) {
        if (f.degree() <= 1) continue;
        if (!k->is_rationals())
            throw domain_error("unsupported: eigenvalues outside the supported field tower");
        std::vector<Rat> qc;
        for (long i = 0; i <= f.degree(); ++i) qc.push_back(f.coeff(i).rational_value());
        QPoly qf(qc);
        cp.reset();
        for (long ord = 3; ord <= 30 && !cp; ++ord)
            if (ConstantsField::cyclotomic(ord)->minimal_polynomial() == qf)
                cp = ConstantsField::cyclotomic(ord);
        if (!cp) cp = ConstantsField::number_field(qf, "a");
        break;
    }
    SplitResult res{cp,
                    extend_constants(r, cp),
                    DifferenceModule::scalar(r, r->one()),
                    {},
                    {},
                    {},
                    cp->minimal_polynomial(),
                    {}};
    FPoly charp = charpoly.map_coefficients(res.extended.embedding);
    for (const auto& [f, mult] : fpoly_factor(charp).factors) {
        if (f.degree() != 1) throw domain_error("unsupported: non-normal");
        for (long i = 0; i < mult; ++i) res.eigenvalues.push_back(-f.coeff(0));
    }
    std::sort(res.eigenvalues.begin(), res.eigenvalues.end(),
              [](const FieldElement& a, const FieldElement& b2) {
                  return a.coords() < b2.coords();
              });

    Mat<FieldElement> bp(n, std::vector<FieldElement>(n, cp->zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bp[i][j] = res.extended.embedding.apply(b[i][j]);
    Mat<FieldElement> p(n, std::vector<FieldElement>(n, cp->zero()));
    for (std::size_t j = 0; j < n; ++j) {
        Mat<FieldElement> shifted = bp;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] - res.eigenvalues[j];
        auto ker = mat_kernel(shifted, cp->zero(), cp->one());
        if (ker.size() != 1) throw internal_error("eigenspace is not a line");
        for (std::size_t i = 0; i < n; ++i) p[i][j] = ker[0][i];
    }
    Mat<FieldElement> pinv = mat_inverse(p, cp->zero(), cp->one());
    Mat<FieldElement> check = mat_mul(mat_mul(pinv, bp, cp->zero()), p, cp->zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (check[i][j] != (i == j ? res.eigenvalues[i] : cp->zero()))
                throw internal_error("conjugation does not diagonalize the system");

    const RingPtr& er = res.extended.ring;
    auto lift = [&](const Mat<FieldElement>& a) {
        Mat<RingElement> out(n, std::vector<RingElement>(n, er->zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] = er->from_constant(a[i][j]);
        return out;
    };
    res.p = lift(p);
    res.p_inv = lift(pinv);
    res.diagonal = DifferenceModule::from_system_matrix(er, lift(check));
    res.report.push_back("characteristic polynomial " + charpoly.to_string("y"));
    res.report.push_back("splitting field " + cp->name());
    return res;
}

} // namespace pvkit
