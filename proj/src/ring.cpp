#include "pvkit/ring.hpp"

#include <algorithm>
#include <sstream>

#include "pvkit/errors.hpp"

namespace pvkit {

namespace {

std::vector<int> invert_permutation(const std::vector<int>& p) {
    std::vector<int> inv(p.size(), -1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        int j = p[i];
        if (j < 0 || j >= static_cast<int>(p.size()) || inv[j] != -1)
            throw usage_error("cyclic_product: not a permutation");
        inv[j] = static_cast<int>(i);
    }
    return inv;
}

} // namespace

RingElement::RingElement(RingPtr ring, RatFunc f) : ring_(std::move(ring)), v_(std::move(f)) {
    if (!ring_->is_field()) throw internal_error("RingElement: RatFunc needs a field kind");
}

RingElement::RingElement(RingPtr ring, FPoly p) : ring_(std::move(ring)), v_(std::move(p)) {
    if (ring_->kind() != RingKind::shift_poly)
        throw internal_error("RingElement: FPoly needs shift_poly kind");
}

RingElement::RingElement(RingPtr ring, std::vector<FieldElement> tuple)
    : ring_(std::move(ring)), v_(std::move(tuple)) {
    if (ring_->kind() != RingKind::cyclic_product)
        throw internal_error("RingElement: tuple needs cyclic_product kind");
    if (static_cast<int>(std::get<std::vector<FieldElement>>(v_).size()) != ring_->tuple_size())
        throw usage_error("tuple size does not match the product ring");
}

bool RingElement::holds_tuple() const {
    return std::holds_alternative<std::vector<FieldElement>>(v_);
}

const std::vector<FieldElement>& RingElement::tuple() const {
    return std::get<std::vector<FieldElement>>(v_);
}

bool RingElement::is_zero() const {
    if (holds_rat_func()) return rat_func().is_zero();
    if (holds_poly()) return poly().is_zero();
    for (const auto& c : tuple())
        if (!c.is_zero()) return false;
    return true;
}

bool RingElement::is_one() const {
    if (holds_rat_func()) return rat_func().is_one();
    if (holds_poly()) return poly() == FPoly::constant(ring_->coefficient_field()->one());
    for (const auto& c : tuple())
        if (!c.is_one()) return false;
    return true;
}

bool RingElement::is_unit() const {
    if (holds_rat_func()) return !rat_func().is_zero();
    if (holds_poly()) return !poly().is_zero() && poly().degree() == 0;
    for (const auto& c : tuple())
        if (c.is_zero()) return false;
    return true;
}

namespace {

void check_same_ring(const RingElement& a, const RingElement& b) {
    if (!same_ring(a.ring(), b.ring()))
        throw usage_error("ring element mismatch: operands live in different rings");
}

} // namespace

RingElement RingElement::operator+(const RingElement& o) const {
    check_same_ring(*this, o);
    if (holds_rat_func()) return RingElement(ring_, rat_func() + o.rat_func());
    if (holds_poly()) return RingElement(ring_, poly() + o.poly());
    std::vector<FieldElement> t = tuple();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = t[i] + o.tuple()[i];
    return RingElement(ring_, std::move(t));
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator-() const {
    if (holds_rat_func()) return RingElement(ring_, -rat_func());
    if (holds_poly()) return RingElement(ring_, -poly());
    std::vector<FieldElement> t = tuple();
    for (auto& c : t) c = -c;
    return RingElement(ring_, std::move(t));
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same_ring(*this, o);
    if (holds_rat_func()) return RingElement(ring_, rat_func() * o.rat_func());
    if (holds_poly()) return RingElement(ring_, poly() * o.poly());
    std::vector<FieldElement> t = tuple();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = t[i] * o.tuple()[i];
    return RingElement(ring_, std::move(t));
}

RingElement RingElement::inverse() const {
    if (!is_unit()) throw domain_error("not a unit: " + to_string());
    if (holds_rat_func()) return RingElement(ring_, rat_func().inverse());
    if (holds_poly())
        return RingElement(ring_, FPoly::constant(poly().constant_value().inverse()));
    std::vector<FieldElement> t = tuple();
    for (auto& c : t) c = c.inverse();
    return RingElement(ring_, std::move(t));
}

RingElement RingElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RingElement acc = ring_->one();
    RingElement b = *this;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc = acc * b;
        if (k > 1) b = b * b;
    }
    return acc;
}

bool RingElement::operator==(const RingElement& o) const {
    check_same_ring(*this, o);
    if (holds_rat_func()) return rat_func() == o.rat_func();
    if (holds_poly()) return poly() == o.poly();
    return tuple() == o.tuple();
}

std::string RingElement::to_string() const {
    if (holds_rat_func()) return rat_func().to_string();
    if (holds_poly()) return poly().to_string();
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < tuple().size(); ++i) {
        if (i) os << ", ";
        os << tuple()[i].to_string();
    }
    os << ")";
    return os.str();
}

RingPtr BaseDifferenceRing::shift_field(FieldPtr k) {
    auto r = std::shared_ptr<BaseDifferenceRing>(new BaseDifferenceRing());
    r->kind_ = RingKind::shift_field;
    r->k_ = std::move(k);
    return r;
}

RingPtr BaseDifferenceRing::q_dilation_field(FieldPtr k, Rat q) {
    q.canonicalize();
    if (q == 0) throw usage_error("q-dilation: q must be nonzero");
    if (q == 1 || q == -1)
        throw usage_error("q-dilation: q must not be a root of unity");
    auto r = std::shared_ptr<BaseDifferenceRing>(new BaseDifferenceRing());
    r->kind_ = RingKind::q_dilation_field;
    r->k_ = std::move(k);
    r->q_ = q;
    return r;
}

RingPtr BaseDifferenceRing::shift_poly(FieldPtr k) {
    auto r = std::shared_ptr<BaseDifferenceRing>(new BaseDifferenceRing());
    r->kind_ = RingKind::shift_poly;
    r->k_ = std::move(k);
    return r;
}

RingPtr BaseDifferenceRing::cyclic_product(FieldPtr k, std::vector<int> perm) {
    if (perm.empty()) throw usage_error("cyclic_product: empty permutation");
    auto r = std::shared_ptr<BaseDifferenceRing>(new BaseDifferenceRing());
    r->kind_ = RingKind::cyclic_product;
    r->k_ = std::move(k);
    r->perm_inv_ = invert_permutation(perm);
    r->perm_ = std::move(perm);
    return r;
}

RingPtr BaseDifferenceRing::cyclic_product_cycle(FieldPtr k, int n) {
    if (n < 1) throw usage_error("cyclic_product: size must be >= 1");
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = (i + n - 1) % n;
    return cyclic_product(std::move(k), std::move(perm));
}

std::vector<std::vector<int>> BaseDifferenceRing::permutation_orbits() const {
    int n = tuple_size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> orbit;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            orbit.push_back(j);
            j = perm_[j];
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

RingElement BaseDifferenceRing::zero() const {
    return from_constant(k_->zero());
}

RingElement BaseDifferenceRing::one() const {
    return from_constant(k_->one());
}

RingElement BaseDifferenceRing::from_constant(const FieldElement& c) const {
    auto self = shared_from_this();
    switch (kind_) {
        case RingKind::shift_field:
        case RingKind::q_dilation_field:
            return RingElement(self, RatFunc::constant(c));
        case RingKind::shift_poly:
            return RingElement(self, FPoly::constant(c));
        case RingKind::cyclic_product:
            return RingElement(self, std::vector<FieldElement>(tuple_size(), c));
    }
    throw internal_error("from_constant: bad kind");
}

RingElement BaseDifferenceRing::from_rational(const Rat& r) const {
    return from_constant(k_->from_rational(r));
}

RingElement BaseDifferenceRing::x() const {
    auto self = shared_from_this();
    if (is_field()) return RingElement(self, RatFunc::x(k_));
    if (kind_ == RingKind::shift_poly) return RingElement(self, FPoly::x(k_));
    throw usage_error("product rings have no variable x");
}

RingElement BaseDifferenceRing::from_rat_func(RatFunc f) const {
    if (!is_field()) {
        if (kind_ == RingKind::shift_poly && f.is_polynomial())
            return RingElement(shared_from_this(), f.num() * f.den().constant_value().inverse());
        throw usage_error("rational function element in a non-field ring");
    }
    return RingElement(shared_from_this(), std::move(f));
}

RingElement BaseDifferenceRing::from_poly(FPoly p) const {
    if (is_field()) return RingElement(shared_from_this(), RatFunc::from_poly(std::move(p)));
    return RingElement(shared_from_this(), std::move(p));
}

RingElement BaseDifferenceRing::from_tuple(std::vector<FieldElement> t) const {
    return RingElement(shared_from_this(), std::move(t));
}

std::string BaseDifferenceRing::name() const {
    switch (kind_) {
        case RingKind::shift_field:
            return k_->name() + "(x) with x -> x+1";
        case RingKind::q_dilation_field:
            return k_->name() + "(x) with x -> " + rat_to_string(q_) + "*x";
        case RingKind::shift_poly:
            return k_->name() + "[x] with x -> x+1";
        case RingKind::cyclic_product:
            return k_->name() + "^" + std::to_string(tuple_size()) + " with coordinate permutation";
    }
    throw internal_error("name: bad kind");
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    if (!same_field(a->coefficient_field(), b->coefficient_field())) return false;
    if (a->kind() == RingKind::q_dilation_field && a->q() != b->q()) return false;
    if (a->kind() == RingKind::cyclic_product && a->permutation() != b->permutation()) return false;
    return true;
}

RingElement tau_apply(const RingElement& e, long power) {
    const RingPtr& r = e.ring();
    if (!r) throw usage_error("tau_apply: element has no ring");
    if (power == 0) return e;
    const FieldPtr& k = r->coefficient_field();
    switch (r->kind()) {
        case RingKind::shift_field:
            return RingElement(r, e.rat_func().shift_arg(k->from_long(power)));
        case RingKind::q_dilation_field: {
            Rat qp = rat_pow(r->q(), power);
            return RingElement(r, e.rat_func().scale_arg(k->from_rational(qp)));
        }
        case RingKind::shift_poly:
            return RingElement(r, e.poly().shift(k->from_long(power)));
        case RingKind::cyclic_product: {
            const auto& perm = power > 0 ? r->permutation() : r->perm_inv_;
            long steps = power > 0 ? power : -power;
            std::vector<FieldElement> t = e.tuple();
            for (long s = 0; s < steps; ++s) {
                std::vector<FieldElement> u(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) u[i] = t[perm[i]];
                t = std::move(u);
            }
            return RingElement(r, std::move(t));
        }
    }
    throw internal_error("tau_apply: bad kind");
}

ConstantsInfo constants_of(const RingPtr& r) {
    switch (r->kind()) {
        case RingKind::shift_field:
        case RingKind::shift_poly:
            return {r->coefficient_field(),
                    "degree descent: a nonconstant f in lowest terms with f(x+1) = f(x) "
                    "would need tau-fixed numerator and denominator, but p(x+1) = p(x) "
                    "forces deg p = 0 (the leading difference coefficient is deg(p) != 0)"};
        case RingKind::q_dilation_field:
            return {r->coefficient_field(),
                    "valuation: p(qx) = p(x) compares coefficients as c_i q^i = c_i, and "
                    "q^i != 1 for i != 0 since q is not a root of unity"};
        case RingKind::cyclic_product: {
            if (r->permutation_orbits().size() != 1)
                throw domain_error("constants do not form a field: the coordinate "
                                   "permutation is not transitive");
            return {r->coefficient_field(),
                    "diagonal: a tuple fixed by a transitive permutation is constant "
                    "along the single orbit"};
        }
    }
    throw internal_error("constants_of: bad kind");
}

bool DifferenceIdeal::is_zero_ideal() const {
    for (const auto& g : generators)
        if (!g.is_zero()) return false;
    return true;
}

namespace {

// single polynomial generator of the ideal in K[x]
FPoly poly_ideal_gcd(const DifferenceIdeal& ideal) {
    FPoly g(ideal.ring->coefficient_field());
    for (const auto& gen : ideal.generators) {
        if (gen.is_zero()) continue;
        g = g.is_zero() ? gen.poly().monic() : fpoly_gcd(g, gen.poly());
    }
    return g;
}

// coordinates where some generator is nonzero
std::vector<bool> tuple_ideal_support(const DifferenceIdeal& ideal) {
    std::vector<bool> support(ideal.ring->tuple_size(), false);
    for (const auto& gen : ideal.generators)
        for (std::size_t i = 0; i < gen.tuple().size(); ++i)
            if (!gen.tuple()[i].is_zero()) support[i] = true;
    return support;
}

} // namespace

bool ideal_contains(const DifferenceIdeal& ideal, const RingElement& e) {
    if (!same_ring(ideal.ring, e.ring()))
        throw usage_error("ideal membership: element from a different ring");
    switch (ideal.ring->kind()) {
        case RingKind::shift_field:
        case RingKind::q_dilation_field:
            return ideal.is_zero_ideal() ? e.is_zero() : true;
        case RingKind::shift_poly: {
            FPoly g = poly_ideal_gcd(ideal);
            if (g.is_zero()) return e.is_zero();
            return (e.poly() % g).is_zero();
        }
        case RingKind::cyclic_product: {
            std::vector<bool> support = tuple_ideal_support(ideal);
            for (std::size_t i = 0; i < e.tuple().size(); ++i)
                if (!e.tuple()[i].is_zero() && !support[i]) return false;
            return true;
        }
    }
    throw domain_error("unsupported ambient ring");
}

bool is_tau_stable(const DifferenceIdeal& ideal) {
    for (const auto& g : ideal.generators) {
        if (!ideal_contains(ideal, tau_apply(g, 1))) return false;
        if (!ideal_contains(ideal, tau_apply(g, -1))) return false;
    }
    return true;
}

SimplicityCertificate simplicity_certificate(const RingPtr& r) {
    SimplicityCertificate cert;
    switch (r->kind()) {
        case RingKind::shift_field:
        case RingKind::q_dilation_field:
            cert.verdict = SimplicityVerdict::simple;
            cert.trace = {"the base ring is a field",
                          "a field has no ideals other than (0) and (1), difference or not"};
            return cert;
        case RingKind::shift_poly:
            cert.verdict = SimplicityVerdict::simple;
            cert.trace = {
                "degree descent in " + r->name(),
                "take a nonzero tau-stable ideal I and p in I of minimal degree",
                "tau(p) - p lies in I and has strictly smaller degree, so tau(p) = p",
                "p(x+1) = p(x) forces p constant, hence a unit, hence I = (1)"};
            return cert;
        case RingKind::cyclic_product: {
            auto orbits = r->permutation_orbits();
            if (orbits.size() == 1) {
                cert.verdict = SimplicityVerdict::simple;
                cert.trace = {
                    "the coordinate permutation is transitive",
                    "a tau-stable ideal of K^n has a coordinate-support set stable "
                    "under the permutation, hence empty or everything"};
                return cert;
            }
            cert.verdict = SimplicityVerdict::not_simple;
            cert.trace = {"the coordinate permutation has " +
                              std::to_string(orbits.size()) +
                              " orbits, so a proper orbit gives a stable ideal",
                          "witness: the indicator tuple of one orbit"};
            std::vector<FieldElement> w(r->tuple_size(), r->coefficient_field()->zero());
            for (int i : orbits.front()) w[i] = r->coefficient_field()->one();
            DifferenceIdeal witness{r, {r->from_tuple(std::move(w))}};
            // re-check the witness before emitting it
            bool proper = false;
            for (int i = 0; i < r->tuple_size(); ++i) {
                std::vector<FieldElement> probe(r->tuple_size(), r->coefficient_field()->zero());
                probe[i] = r->coefficient_field()->one();
                if (!ideal_contains(witness, r->from_tuple(std::move(probe)))) proper = true;
            }
            if (!is_tau_stable(witness) || witness.is_zero_ideal() || !proper)
                throw internal_error("simplicity witness failed its own re-check");
            cert.witness = std::move(witness);
            return cert;
        }
    }
    cert.verdict = SimplicityVerdict::unknown;
    return cert;
}

bool reducedness_probe(const RingPtr& r) {
    // all base kinds are products of integral domains; the interesting
    // torsion cases live in PV presentations, which have their own probe
    bool reduced = true;
    if (simplicity_certificate(r).verdict == SimplicityVerdict::simple && !reduced)
        throw internal_error("reducedness probe contradicts a simplicity certificate");
    return reduced;
}

bool LocalizedRing::contains(const RatFunc& f) const {
    if (base->kind() != RingKind::shift_poly)
        throw domain_error("localization membership supported over polynomial bases only");
    if (is_trivial()) return f.is_polynomial();
    // every irreducible factor of the denominator must be an integer shift
    // of an irreducible factor of some inverted generator
    std::vector<FPoly> gen_factors;
    for (const auto& g : inverted)
        for (const auto& [p, m] : fpoly_factor(g.poly()).factors) gen_factors.push_back(p);
    for (const auto& [p, m] : fpoly_factor(f.den()).factors) {
        bool matched = false;
        for (const auto& q : gen_factors) {
            if (p.degree() != q.degree()) continue;
            long d = p.degree();
            if (d == 0) continue;
            // candidate shift from the subleading coefficients of the monic factors
            FieldElement diff = p.coeff(d - 1) - q.coeff(d - 1);
            FieldElement shift = diff / p.field()->from_long(d);
            if (!shift.is_rational()) continue;
            Rat s = shift.rational_value();
            if (s.get_den() != 1) continue;
            if (q.shift(p.field()->from_rational(s)) == p) { matched = true; break; }
        }
        if (!matched) return false;
    }
    return true;
}

LocalizedRing localize(const RingPtr& r, const std::vector<RingElement>& gens) {
    if (r->kind() != RingKind::shift_poly && r->kind() != RingKind::cyclic_product)
        throw domain_error("localize: supported for polynomial and product rings only");
    LocalizedRing loc{r, {}};
    for (const auto& g : gens) {
        if (!same_ring(g.ring(), r)) throw usage_error("localize: generator from a different ring");
        if (g.is_zero()) throw domain_error("localize: zero generator");
        if (r->kind() == RingKind::cyclic_product) {
            // zero divisors are the tuples with a zero coordinate
            if (!g.is_unit()) throw domain_error("localize: generator is a zero divisor");
            continue; // units change nothing
        }
        if (g.is_unit()) continue;
        loc.inverted.push_back(g);
    }
    return loc;
}

TotalFractionsResult total_fractions_check(const RingPtr& r) {
    SimplicityCertificate cert = simplicity_certificate(r);
    if (cert.verdict != SimplicityVerdict::simple)
        throw domain_error("total_fractions_check: ring is not certified simple");
    TotalFractionsResult res;
    switch (r->kind()) {
        case RingKind::shift_field:
        case RingKind::q_dilation_field:
            res.s = r;
            res.report.push_back("R is a field, so S = R");
            break;
        case RingKind::shift_poly:
            res.s = BaseDifferenceRing::shift_field(r->coefficient_field());
            res.report.push_back("every nonzero polynomial is a non-zero-divisor, so S = " +
                                 res.s->name());
            break;
        case RingKind::cyclic_product:
            res.s = r;
            res.report.push_back("a non-zero-divisor tuple has all coordinates nonzero, "
                                 "hence is a unit, so S = R");
            break;
    }
    ConstantsInfo cr = constants_of(r);
    ConstantsInfo cs = constants_of(res.s);
    if (!same_field(cr.field, cs.field))
        throw internal_error("total_fractions_check: C_S differs from C_R");
    res.report.push_back("C_R = " + cr.field->name() + " is a field (" + cr.certificate + ")");
    res.report.push_back("C_S = C_R, recomputed on S");
    return res;
}

} // namespace pvkit
