#include "pvkit/orbit.hpp"

#include <algorithm>
#include <map>

#include "pvkit/errors.hpp"

namespace pvkit {

long TauOrbit::exponent_sum() const {
    long s = 0;
    for (const auto& m : members) s += m.exponent;
    return s;
}

FPoly orbit_member_poly(const RingPtr& r, const FPoly& rep, long offset) {
    const FieldPtr& k = r->coefficient_field();
    if (r->kind() == RingKind::shift_field) return rep.shift(k->from_long(offset));
    return rep.scale_arg(k->from_rational(rat_pow(r->q(), offset))).monic();
}

std::optional<long> orbit_offset(const RingPtr& r, const FPoly& rep, const FPoly& p) {
    long d = rep.degree();
    if (d < 1 || p.degree() != d) return std::nullopt;
    const FieldPtr& k = r->coefficient_field();
    if (r->kind() == RingKind::shift_field) {
        // p(x) = rep(x+h): subleading coefficient grows by d*h
        FieldElement hval = (p.coeff(d - 1) - rep.coeff(d - 1)) / k->from_long(d);
        if (!hval.is_rational()) return std::nullopt;
        Rat h = hval.rational_value();
        if (h.get_den() != 1) return std::nullopt;
        long hl = static_cast<long>(h.get_num().get_si());
        if (orbit_member_poly(r, rep, hl) == p) return hl;
        return std::nullopt;
    }
    // p = monic(rep(q^h x)): p_i = rep_i * q^{h(i-d)}
    long i = 0;
    while (i < d && rep.coeff(i).is_zero() && p.coeff(i).is_zero()) ++i;
    if (i >= d || rep.coeff(i).is_zero() || p.coeff(i).is_zero()) return std::nullopt;
    FieldElement ratio = p.coeff(i) / rep.coeff(i);
    if (!ratio.is_rational()) return std::nullopt;
    auto e = rat_log_exact(ratio.rational_value(), r->q());
    if (!e || *e % (i - d) != 0) return std::nullopt;
    long h = *e / (i - d);
    if (orbit_member_poly(r, rep, h) == p) return h;
    return std::nullopt;
}

RingElement OrbitDecomposition::reassemble() const {
    const FieldPtr& k = ring->coefficient_field();
    RatFunc out = RatFunc::constant(constant);
    if (x_valuation != 0) out = out * RatFunc::x(k).pow(x_valuation);
    for (const auto& orbit : orbits)
        for (const auto& m : orbit.members)
            out = out *
                  RatFunc::from_poly(orbit_member_poly(ring, orbit.representative, m.offset))
                      .pow(m.exponent);
    return ring->from_rat_func(out);
}

OrbitDecomposition orbit_decompose(const RingElement& a) {
    const RingPtr& r = a.ring();
    if (!r || !r->is_field()) throw domain_error("orbit_decompose needs a field base");
    if (a.is_zero()) throw usage_error("orbit_decompose: zero input");
    const FieldPtr& k = r->coefficient_field();
    bool qcase = r->kind() == RingKind::q_dilation_field;

    OrbitDecomposition dec;
    dec.ring = r;
    dec.constant = k->one();

    std::map<long, std::map<long, long>> collected; // orbit index -> offset -> exponent
    std::vector<FPoly> reps;

    auto absorb = [&](const FPoly& poly, int sign) {
        auto fac = fpoly_factor(poly);
        FieldElement unit = sign > 0 ? fac.unit : fac.unit.inverse();
        dec.constant = dec.constant * unit;
        for (const auto& [p, mult] : fac.factors) {
            long e = static_cast<long>(mult) * sign;
            if (qcase && p.degree() == 1 && p.coeff(0).is_zero()) {
                dec.x_valuation += e;
                continue;
            }
            std::optional<std::size_t> idx;
            std::optional<long> off;
            for (std::size_t i = 0; i < reps.size(); ++i)
                if (auto h = orbit_offset(r, reps[i], p)) { idx = i; off = *h; break; }
            if (!idx) {
                idx = reps.size();
                off = 0;
                reps.push_back(p);
            }
            collected[static_cast<long>(*idx)][*off] += e;
        }
    };
    absorb(a.rat_func().num(), 1);
    absorb(a.rat_func().den(), -1);

    for (auto& [idx, offsets] : collected) {
        // normalize so the minimal surviving offset is 0
        long min_off = 0;
        bool any = false;
        for (auto& [h, e] : offsets)
            if (e != 0 && (!any || h < min_off)) { min_off = h; any = true; }
        if (!any) continue;
        TauOrbit orbit{orbit_member_poly(r, reps[idx], min_off), {}};
        for (auto& [h, e] : offsets)
            if (e != 0) orbit.members.push_back({h - min_off, e});
        std::sort(orbit.members.begin(), orbit.members.end(),
                  [](const OrbitMember& x, const OrbitMember& y) { return x.offset < y.offset; });
        dec.orbits.push_back(std::move(orbit));
    }
    if (dec.reassemble() != a) throw internal_error("orbit decomposition failed to reassemble");
    return dec;
}

std::optional<Telescoping> telescope(const RingElement& a) {
    OrbitDecomposition dec = orbit_decompose(a);
    const RingPtr& r = dec.ring;
    const FieldPtr& k = r->coefficient_field();
    if (r->kind() == RingKind::q_dilation_field && dec.x_valuation != 0) return std::nullopt;
    RatFunc r0 = RatFunc::constant(k->one());
    for (const auto& orbit : dec.orbits) {
        if (orbit.exponent_sum() != 0) return std::nullopt;
        // m_h = -(prefix sum of exponents through offset h); then
        // prod_h (member_{h+1}/member_h)^{m_h} = prod_h member_h^{e_h}
        std::map<long, long> exps;
        for (const auto& m : orbit.members) exps[m.offset] = m.exponent;
        long lo = exps.begin()->first, hi = exps.rbegin()->first;
        long prefix = 0;
        for (long h = lo; h < hi; ++h) {
            prefix += exps.count(h) ? exps[h] : 0;
            if (prefix != 0)
                r0 = r0 * RatFunc::from_poly(orbit_member_poly(r, orbit.representative, h))
                              .pow(-prefix);
        }
    }
    Telescoping t;
    t.r0 = r->from_rat_func(r0);
    RingElement ratio = a * t.r0 * tau_apply(t.r0).inverse();
    if (!ratio.rat_func().is_constant()) throw internal_error("telescoping residual not constant");
    t.residual_constant = ratio.rat_func().constant_value();
    return t;
}

std::optional<RingElement> tau_coboundary(const RingElement& a) {
    auto t = telescope(a);
    if (!t) return std::nullopt;
    const RingPtr& r = a.ring();
    if (r->kind() == RingKind::shift_field) {
        if (!t->residual_constant.is_one()) return std::nullopt;
        return t->r0;
    }
    // q-case: residual q^w is absorbed by x^w since tau(x^w)/x^w = q^w
    if (!t->residual_constant.is_rational()) return std::nullopt;
    auto w = rat_log_exact(t->residual_constant.rational_value(), r->q());
    if (!w) return std::nullopt;
    RingElement out = t->r0 * r->from_rat_func(RatFunc::x(r->coefficient_field()).pow(*w));
    if (tau_apply(out) * out.inverse() != a) throw internal_error("coboundary witness failed");
    return out;
}

} // namespace pvkit
