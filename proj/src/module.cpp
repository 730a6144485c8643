#include "pvkit/module.hpp"

#include <algorithm>

#include "pvkit/errors.hpp"

namespace pvkit {

namespace {

void check_square(const Mat<RingElement>& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw usage_error("module matrix must be square");
    if (a.empty()) throw usage_error("module rank must be >= 1");
}

Mat<FieldElement> slot_matrix(const Mat<RingElement>& a, int slot) {
    Mat<FieldElement> m(a.size(), std::vector<FieldElement>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a[i][j].tuple()[slot];
    return m;
}

Mat<RingElement> ring_mat_inverse(const RingPtr& r, const Mat<RingElement>& a) {
    if (r->is_field()) return mat_inverse(a, r->zero(), r->one());
    if (r->kind() == RingKind::cyclic_product) {
        const FieldPtr& k = r->coefficient_field();
        int n = r->tuple_size();
        std::size_t rk = a.size();
        std::vector<Mat<FieldElement>> slots;
        for (int s = 0; s < n; ++s)
            slots.push_back(mat_inverse(slot_matrix(a, s), k->zero(), k->one()));
        Mat<RingElement> inv(rk, std::vector<RingElement>(rk, r->zero()));
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < rk; ++j) {
                std::vector<FieldElement> t(n, k->zero());
                for (int s = 0; s < n; ++s) t[s] = slots[s][i][j];
                inv[i][j] = r->from_tuple(std::move(t));
            }
        return inv;
    }
    throw domain_error("unsupported base ring for difference modules");
}

FPoly fpoly_lcm(const FPoly& a, const FPoly& b) {
    if (a.is_zero() || b.is_zero()) throw internal_error("fpoly_lcm of zero");
    return ((a * b) / fpoly_gcd(a, b)).monic();
}

// h >= 0 such that gcd(a(x), c(x-h)) could be nontrivial, via factor matching
std::vector<long> shift_dispersion_candidates(const FPoly& a, const FPoly& c) {
    std::vector<long> hs;
    if (a.degree() < 1 || c.degree() < 1) return hs;
    const FieldPtr& k = a.field();
    auto fa = fpoly_factor(a).factors;
    auto fc = fpoly_factor(c).factors;
    for (const auto& [p, mp] : fa)
        for (const auto& [q, mq] : fc) {
            long d = p.degree();
            if (d < 1 || q.degree() != d) continue;
            // p(x) = q(x-h): compare subleading coefficients
            FieldElement diff = q.coeff(d - 1) - p.coeff(d - 1);
            FieldElement hval = diff / k->from_long(d);
            if (!hval.is_rational()) continue;
            Rat h = hval.rational_value();
            if (h.get_den() != 1 || h < 0) continue;
            long hl = static_cast<long>(h.get_num().get_si());
            if (q.shift(k->from_long(-hl)) == p) hs.push_back(hl);
        }
    std::sort(hs.rbegin(), hs.rend());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

// h >= 0 such that some monic factor of a equals a factor of c rescaled by
// q^{-h} (after monic normalization)
std::vector<long> q_dispersion_candidates(const FPoly& a, const FPoly& c, const Rat& q) {
    std::vector<long> hs;
    if (a.degree() < 1 || c.degree() < 1) return hs;
    const FieldPtr& k = a.field();
    auto fa = fpoly_factor(a).factors;
    auto fc = fpoly_factor(c).factors;
    for (const auto& [p, mp] : fa)
        for (const auto& [r, mr] : fc) {
            long d = p.degree();
            if (d < 1 || r.degree() != d) continue;
            long i = 0;
            while (i < d && p.coeff(i).is_zero() && r.coeff(i).is_zero()) ++i;
            if (i >= d) continue;
            if (p.coeff(i).is_zero() || r.coeff(i).is_zero()) continue;
            // p_i = r_i * q^{h(d-i)}
            FieldElement ratio = p.coeff(i) / r.coeff(i);
            if (!ratio.is_rational()) continue;
            auto e = rat_log_exact(ratio.rational_value(), q);
            if (!e || *e < 0 || *e % (d - i) != 0) continue;
            long h = *e / (d - i);
            Rat qmh = rat_pow(q, -h);
            if (r.scale_arg(k->from_rational(qmh)).monic() == p) hs.push_back(h);
        }
    std::sort(hs.rbegin(), hs.rend());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

FPoly den_lcm(const Mat<RatFunc>& b) {
    FPoly d = FPoly::constant(b[0][0].field()->one());
    for (const auto& row : b)
        for (const auto& e : row) d = fpoly_lcm(d, e.den());
    return d;
}

// Abramov-style universal denominator for tau(y) = B*y.
FPoly universal_denominator(const RingPtr& ring, const Mat<RatFunc>& b, int degree_cap) {
    const FieldPtr& k = ring->coefficient_field();
    Mat<RatFunc> binv = mat_inverse(b, RatFunc(k), RatFunc::constant(k->one()));
    FPoly u = FPoly::constant(k->one());
    if (ring->kind() == RingKind::shift_field) {
        FPoly a = den_lcm(binv);
        FPoly c = den_lcm(b).shift(k->from_long(-1));
        for (long h : shift_dispersion_candidates(a, c)) {
            for (;;) {
                FPoly g = fpoly_gcd(a, c.shift(k->from_long(-h)));
                if (g.degree() < 1) break;
                for (long i = 0; i <= h; ++i) u = u * g.shift(k->from_long(i));
                a = (a / g).monic();
                c = (c / g.shift(k->from_long(h))).monic();
            }
        }
        return u.monic();
    }
    // q-dilation: the role of integer shifts is played by q-power scalings;
    // powers of x scale into themselves, so they get a blanket cap
    const Rat& q = ring->q();
    auto strip_x = [&](FPoly p) {
        FPoly x = FPoly::x(k);
        while (p.degree() > 0 && p.coeff(0).is_zero()) p = p / x;
        return p.monic();
    };
    FPoly a = strip_x(den_lcm(binv));
    FPoly c = strip_x(den_lcm(b).scale_arg(k->from_rational(Rat(1) / q)));
    for (long h : q_dispersion_candidates(a, c, q)) {
        for (;;) {
            FPoly g = fpoly_gcd(a, c.scale_arg(k->from_rational(rat_pow(q, -h))).monic());
            if (g.degree() < 1) break;
            for (long i = 0; i <= h; ++i)
                u = u * g.scale_arg(k->from_rational(rat_pow(q, i))).monic();
            a = (a / g).monic();
            c = (c / g.scale_arg(k->from_rational(rat_pow(q, h))).monic()).monic();
        }
    }
    return (u * FPoly::x(k).pow(degree_cap)).monic();
}

RatFunc tau_rf(const RingPtr& ring, const RatFunc& f, long power = 1) {
    const FieldPtr& k = ring->coefficient_field();
    if (ring->kind() == RingKind::shift_field) return f.shift_arg(k->from_long(power));
    return f.scale_arg(k->from_rational(rat_pow(ring->q(), power)));
}

FPoly tau_fp(const RingPtr& ring, const FPoly& p, long power = 1) {
    const FieldPtr& k = ring->coefficient_field();
    if (ring->kind() == RingKind::shift_field) return p.shift(k->from_long(power));
    return p.scale_arg(k->from_rational(rat_pow(ring->q(), power)));
}

} // namespace

std::vector<std::vector<RatFunc>> rational_system_solutions(const RingPtr& r,
                                                            const Mat<RatFunc>& b,
                                                            int degree_cap) {
    if (!r->is_field()) throw domain_error("rational_system_solutions needs a field base");
    const FieldPtr& k = r->coefficient_field();
    std::size_t rank = b.size();
    FPoly u = universal_denominator(r, b, degree_cap);
    long n = degree_cap + u.degree(); // numerator degree for z = u*y
    // substitute y = z/u: tau(z) = (tau(u)/u) * B * z, then clear denominators
    RatFunc uratio(tau_fp(r, u), u);
    Mat<FPoly> p(rank, std::vector<FPoly>(rank, FPoly(k)));
    std::vector<FPoly> d(rank, FPoly(k));
    for (std::size_t i = 0; i < rank; ++i) {
        std::vector<RatFunc> m;
        FPoly di = FPoly::constant(k->one());
        for (std::size_t j = 0; j < rank; ++j) {
            m.push_back(b[i][j] * uratio);
            di = fpoly_lcm(di, m.back().den());
        }
        d[i] = di;
        for (std::size_t j = 0; j < rank; ++j) {
            RatFunc scaled = m[j] * RatFunc::from_poly(di);
            if (!scaled.is_polynomial()) throw internal_error("denominator clearing failed");
            p[i][j] = scaled.num() * scaled.den().constant_value().inverse();
        }
    }
    // unknowns: coefficients z_{j,t}, t = 0..n; equations: coefficients of
    // D_i*tau(z_i) - sum_j P_ij*z_j per row i
    std::size_t cols = rank * (n + 1);
    long maxdeg = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        maxdeg = std::max(maxdeg, d[i].degree() + n + 1);
        for (std::size_t j = 0; j < rank; ++j) maxdeg = std::max(maxdeg, p[i][j].degree() + n);
    }
    FPoly x = FPoly::x(k);
    Mat<FieldElement> sys(rank * (maxdeg + 1), std::vector<FieldElement>(cols, k->zero()));
    for (std::size_t j = 0; j < rank; ++j)
        for (long t = 0; t <= n; ++t) {
            std::size_t col = j * (n + 1) + t;
            FPoly xt = x.pow(t);
            FPoly txt = tau_fp(r, xt);
            for (std::size_t i = 0; i < rank; ++i) {
                FPoly contrib = -(p[i][j] * xt);
                if (i == j) contrib = contrib + d[i] * txt;
                for (long e = 0; e <= contrib.degree(); ++e)
                    sys[i * (maxdeg + 1) + e][col] = contrib.coeff(e);
            }
        }
    auto kernel = mat_kernel(sys, k->zero(), k->one());
    std::vector<std::vector<RatFunc>> sols;
    for (const auto& v : kernel) {
        std::vector<RatFunc> y;
        for (std::size_t j = 0; j < rank; ++j) {
            std::vector<FieldElement> cs(v.begin() + j * (n + 1), v.begin() + (j + 1) * (n + 1));
            y.emplace_back(FPoly(k, std::move(cs)), u);
        }
        sols.push_back(std::move(y));
    }
    return sols;
}

DifferenceModule DifferenceModule::from_tau_matrix(RingPtr base, Mat<RingElement> a) {
    check_square(a);
    for (const auto& row : a)
        for (const auto& e : row)
            if (!same_ring(e.ring(), base)) throw usage_error("matrix entry from a different ring");
    DifferenceModule m;
    m.base_ = std::move(base);
    m.a_inv_ = ring_mat_inverse(m.base_, a); // throws when det is not a unit
    m.a_ = std::move(a);
    return m;
}

DifferenceModule DifferenceModule::from_system_matrix(RingPtr base, Mat<RingElement> b) {
    check_square(b);
    Mat<RingElement> a = ring_mat_inverse(base, b);
    return from_tau_matrix(std::move(base), std::move(a));
}

DifferenceModule DifferenceModule::scalar(const RingPtr& base, const RingElement& a) {
    return from_tau_matrix(base, {{a}});
}

std::vector<RingElement> DifferenceModule::tau_act(const std::vector<RingElement>& coords,
                                                   long power) const {
    if (coords.size() != a_.size()) throw usage_error("coordinate vector has wrong length");
    std::vector<RingElement> v = coords;
    if (power > 0) {
        for (long s = 0; s < power; ++s) {
            for (auto& c : v) c = tau_apply(c, 1);
            v = mat_apply(a_, v, base_->zero());
        }
    } else {
        // inverse of c -> A*tau(c) is c -> tau^{-1}(A^{-1}*c)
        for (long s = 0; s < -power; ++s) {
            v = mat_apply(a_inv_, v, base_->zero());
            for (auto& c : v) c = tau_apply(c, -1);
        }
    }
    return v;
}

DifferenceModule construct(ModuleConstruction kind, const DifferenceModule& m,
                           const DifferenceModule* n) {
    const RingPtr& r = m.base();
    const Mat<RingElement>& a = m.tau_matrix();
    switch (kind) {
        case ModuleConstruction::dual: {
            Mat<RingElement> at = mat_transpose(a, r->zero());
            return DifferenceModule::from_tau_matrix(r, ring_mat_inverse(r, at));
        }
        case ModuleConstruction::tensor: {
            if (!n) throw usage_error("tensor needs two modules");
            if (!same_ring(r, n->base())) throw usage_error("base ring mismatch");
            const Mat<RingElement>& b = n->tau_matrix();
            std::size_t r1 = a.size(), r2 = b.size();
            Mat<RingElement> t(r1 * r2, std::vector<RingElement>(r1 * r2, r->zero()));
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < r1; ++j)
                    for (std::size_t k = 0; k < r2; ++k)
                        for (std::size_t l = 0; l < r2; ++l)
                            t[i * r2 + k][j * r2 + l] = a[i][j] * b[k][l];
            return DifferenceModule::from_tau_matrix(r, std::move(t));
        }
        case ModuleConstruction::dsum: {
            if (!n) throw usage_error("dsum needs two modules");
            if (!same_ring(r, n->base())) throw usage_error("base ring mismatch");
            const Mat<RingElement>& b = n->tau_matrix();
            std::size_t r1 = a.size(), r2 = b.size();
            Mat<RingElement> s(r1 + r2, std::vector<RingElement>(r1 + r2, r->zero()));
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < r1; ++j) s[i][j] = a[i][j];
            for (std::size_t i = 0; i < r2; ++i)
                for (std::size_t j = 0; j < r2; ++j) s[r1 + i][r1 + j] = b[i][j];
            return DifferenceModule::from_tau_matrix(r, std::move(s));
        }
        case ModuleConstruction::hom: {
            if (!n) throw usage_error("hom needs two modules");
            DifferenceModule d = construct(ModuleConstruction::dual, m);
            return construct(ModuleConstruction::tensor, d, n);
        }
    }
    throw internal_error("construct: bad kind");
}

FixedVectorSpace fixed_vectors(const DifferenceModule& m, int degree_cap) {
    const RingPtr& r = m.base();
    FixedVectorSpace out;
    out.constants = constants_of(r).field;
    if (r->is_field()) {
        // A*tau(v) = v reads tau(v) = A^{-1}*v, a system with B = A^{-1}
        Mat<RatFunc> b(m.rank(), std::vector<RatFunc>(m.rank(), RatFunc(r->coefficient_field())));
        for (int i = 0; i < m.rank(); ++i)
            for (int j = 0; j < m.rank(); ++j) b[i][j] = m.system_matrix()[i][j].rat_func();
        for (auto& sol : rational_system_solutions(r, b, degree_cap)) {
            std::vector<RingElement> v;
            for (auto& f : sol) v.push_back(r->from_rat_func(std::move(f)));
            out.basis.push_back(std::move(v));
        }
        return out;
    }
    if (r->kind() != RingKind::cyclic_product)
        throw domain_error("unsupported base ring for fixed_vectors");
    auto orbits = r->permutation_orbits();
    if (orbits.size() != 1)
        throw domain_error("constants do not form a field: the coordinate "
                           "permutation is not transitive");
    const FieldPtr& k = r->coefficient_field();
    int nslots = r->tuple_size();
    int rank = m.rank();
    const auto& perm = r->permutation();
    // slot chain 0, perm(0), perm^2(0), ...; monodromy product around it
    std::vector<int> chain;
    for (int s = 0, t = 0; t < nslots; ++t, s = perm[s]) chain.push_back(s);
    Mat<FieldElement> mono = mat_identity<FieldElement>(rank, k->zero(), k->one());
    for (int s : chain) mono = mat_mul(mono, slot_matrix(m.tau_matrix(), s), k->zero());
    // kernel of (mono - I)
    Mat<FieldElement> mi = mono;
    for (int i = 0; i < rank; ++i) mi[i][i] = mi[i][i] - k->one();
    for (const auto& w : mat_kernel(mi, k->zero(), k->one())) {
        // v^{(s)} = A^{(s)} v^{(perm(s))}, so walking the chain backwards
        // from slot 0 fills every slot
        std::vector<std::vector<FieldElement>> per_slot(nslots);
        per_slot[0] = w;
        for (int t = static_cast<int>(chain.size()) - 1; t >= 1; --t) {
            int s = chain[t];
            // v^{(perm(s_t))} known along the chain: chain[t+1] (mod n)
            int next = (t + 1 < static_cast<int>(chain.size())) ? chain[t + 1] : chain[0];
            if (per_slot[next].empty()) throw internal_error("slot chain gap");
            per_slot[s] = mat_apply(slot_matrix(m.tau_matrix(), s), per_slot[next], k->zero());
        }
        std::vector<RingElement> v;
        for (int i = 0; i < rank; ++i) {
            std::vector<FieldElement> t(nslots, k->zero());
            for (int s = 0; s < nslots; ++s) t[s] = per_slot[s][i];
            v.push_back(r->from_tuple(std::move(t)));
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

std::optional<Mat<RingElement>> is_trivial(const DifferenceModule& m, int degree_cap) {
    FixedVectorSpace fv = fixed_vectors(m, degree_cap);
    if (static_cast<int>(fv.basis.size()) != m.rank()) return std::nullopt;
    const RingPtr& r = m.base();
    Mat<RingElement> fm(m.rank(), std::vector<RingElement>(m.rank(), r->zero()));
    for (int j = 0; j < m.rank(); ++j)
        for (int i = 0; i < m.rank(); ++i) fm[i][j] = fv.basis[j][i];
    ring_mat_inverse(r, fm); // throws when the columns fail to be a basis
    return fm;
}

ScalarSolutions scalar_rational_solutions(const RingPtr& r, const RingElement& a,
                                          const RingElement& b, int degree_cap) {
    if (!r->is_field()) throw domain_error("scalar_rational_solutions needs a field base");
    if (a.is_zero()) throw usage_error("tau(y) = a*y + b needs a nonzero");
    const FieldPtr& k = r->coefficient_field();
    Mat<RatFunc> c = {{a.rat_func(), b.rat_func()},
                      {RatFunc(k), RatFunc::constant(k->one())}};
    auto sols = rational_system_solutions(r, c, degree_cap);
    ScalarSolutions out;
    // z2 satisfies tau(z2) = z2, hence is a constant; eliminate it
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < sols.size(); ++i)
        if (!sols[i][1].is_zero()) { pivot = i; break; }
    for (std::size_t i = 0; i < sols.size(); ++i) {
        if (pivot && i == *pivot) continue;
        RatFunc z1 = sols[i][0];
        if (pivot && !sols[i][1].is_zero()) {
            RatFunc f = sols[i][1] / sols[*pivot][1];
            z1 = z1 - f * sols[*pivot][0];
        }
        if (!z1.is_zero()) out.homogeneous.push_back(r->from_rat_func(std::move(z1)));
    }
    if (pivot) {
        RatFunc y = sols[*pivot][0] / sols[*pivot][1];
        out.particular = r->from_rat_func(std::move(y));
    }
    return out;
}

} // namespace pvkit
