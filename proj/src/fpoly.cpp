#include "pvkit/fpoly.hpp"

#include <algorithm>
#include <sstream>

#include "pvkit/qfactor.hpp"

namespace pvkit {

FPoly::FPoly(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (!same_field(c.field(), field_))
            throw domain_error("coefficient from wrong field");
    trim();
}

void FPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FPoly FPoly::constant(const FieldElement& c) {
    FPoly p(c.field());
    if (!c.is_zero()) p.c_ = {c};
    return p;
}

FPoly FPoly::from_rational_poly(const FieldPtr& k, const QPoly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.coeffs().size());
    for (const auto& r : p.coeffs()) c.push_back(k->from_rational(r));
    return FPoly(k, std::move(c));
}

FPoly FPoly::x(const FieldPtr& k) {
    return FPoly(k, {k->zero(), k->one()});
}

FieldElement FPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : field_->zero();
}

const FieldElement& FPoly::leading() const {
    if (c_.empty()) throw internal_error("leading coefficient of zero polynomial");
    return c_.back();
}

FieldElement FPoly::constant_value() const {
    if (!is_constant()) throw internal_error("constant_value of non-constant");
    return c_.empty() ? field_->zero() : c_[0];
}

FPoly FPoly::operator+(const FPoly& o) const {
    std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return FPoly(field_, std::move(r));
}

FPoly FPoly::operator-(const FPoly& o) const { return *this + (-o); }

FPoly FPoly::operator-() const {
    std::vector<FieldElement> r = c_;
    for (auto& c : r) c = -c;
    return FPoly(field_, std::move(r));
}

FPoly FPoly::operator*(const FPoly& o) const {
    if (is_zero() || o.is_zero()) return FPoly(field_);
    std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return FPoly(field_, std::move(r));
}

FPoly FPoly::operator*(const FieldElement& c) const {
    std::vector<FieldElement> r = c_;
    for (auto& v : r) v = v * c;
    return FPoly(field_, std::move(r));
}

std::pair<FPoly, FPoly> FPoly::divmod(const FPoly& a, const FPoly& b) {
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {FPoly(a.field_), a};
    std::vector<FieldElement> rem = a.c_;
    std::vector<FieldElement> quo(a.c_.size() - b.c_.size() + 1, a.field_->zero());
    FieldElement li = b.leading().inverse();
    for (long i = static_cast<long>(rem.size()) - 1;
         i >= static_cast<long>(b.c_.size()) - 1; --i) {
        if (rem[i].is_zero()) continue;
        FieldElement q = rem[i] * li;
        quo[i - (b.c_.size() - 1)] = q;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            rem[i - (b.c_.size() - 1) + j] = rem[i - (b.c_.size() - 1) + j] - q * b.c_[j];
    }
    return {FPoly(a.field_, std::move(quo)), FPoly(a.field_, std::move(rem))};
}

bool FPoly::operator==(const FPoly& o) const {
    return same_field(field_, o.field_) && c_ == o.c_;
}

FPoly FPoly::derivative() const {
    if (c_.size() <= 1) return FPoly(field_);
    std::vector<FieldElement> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i] * field_->from_long(static_cast<long>(i)));
    return FPoly(field_, std::move(r));
}

FieldElement FPoly::eval(const FieldElement& v) const {
    FieldElement acc = field_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

FPoly FPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

FPoly FPoly::shift(const FieldElement& h) const {
    return compose(FPoly(field_, {h, field_->one()}));
}

FPoly FPoly::scale_arg(const FieldElement& s) const {
    std::vector<FieldElement> r = c_;
    FieldElement pw = field_->one();
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = r[i] * pw;
        pw = pw * s;
    }
    return FPoly(field_, std::move(r));
}

FPoly FPoly::compose(const FPoly& inner) const {
    FPoly acc(field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * inner + FPoly::constant(*it);
    return acc;
}

FPoly FPoly::pow(long e) const {
    if (e < 0) throw domain_error("negative power of a polynomial");
    FPoly acc = FPoly::constant(field_->one());
    FPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FPoly FPoly::map_coefficients(const FieldEmbedding& emb) const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(emb.apply(c));
    return FPoly(emb.target(), std::move(r));
}

std::string FPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c_[i].to_string();
        bool needs_parens = cs.find_first_of("+- ") != std::string::npos;
        if (i == 0) {
            os << cs;
        } else {
            if (!c_[i].is_one()) {
                os << (needs_parens ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

bool FPoly::less(const FPoly& a, const FPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
        FieldElement ea = a.coeff(i);
        FieldElement eb = b.coeff(i);
        if (ea.coords() != eb.coords()) return ea.coords() < eb.coords();
    }
    return false;
}

FPoly fpoly_gcd(FPoly a, FPoly b) {
    while (!b.is_zero()) {
        FPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FPolyXgcd fpoly_xgcd(const FPoly& a, const FPoly& b) {
    FieldPtr k = a.field();
    FPoly r0 = a, r1 = b;
    FPoly s0 = FPoly::constant(k->one()), s1(k);
    FPoly t0(k), t1 = FPoly::constant(k->one());
    while (!r1.is_zero()) {
        auto [q, r2] = FPoly::divmod(r0, r1);
        FPoly s2 = s0 - q * s1;
        FPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        FieldElement inv = r0.leading().inverse();
        r0 = r0 * inv; s0 = s0 * inv; t0 = t0 * inv;
    }
    return {r0, s0, t0};
}

std::vector<std::pair<FPoly, int>> fpoly_squarefree(const FPoly& p) {
    std::vector<std::pair<FPoly, int>> out;
    if (p.is_zero()) throw domain_error("squarefree decomposition of zero");
    FPoly f = p.monic();
    if (f.degree() == 0) return out;
    FPoly df = f.derivative();
    FPoly a = fpoly_gcd(f, df);
    FPoly b = f / a;
    FPoly c = df / a;
    int i = 1;
    while (b.degree() > 0) {
        FPoly d = c - b.derivative();
        FPoly fac = fpoly_gcd(b, d);
        if (fac.degree() > 0) out.emplace_back(fac, i);
        b = b / fac;
        c = d / fac;
        ++i;
    }
    return out;
}

namespace {

// QPoly view of an FPoly with rational coefficients.
QPoly to_qpoly(const FPoly& p) {
    std::vector<Rat> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(v.rational_value());
    return QPoly(std::move(c));
}

// Norm of f in K[x] down to Q[x]: Res_y(minpoly(y), f considered in y)
// computed by evaluation/interpolation in x.
QPoly field_norm_poly(const FPoly& f) {
    const FieldPtr& k = f.field();
    const QPoly& mp = k->minimal_polynomial();
    long d = k->degree();
    long target_deg = f.degree() * d;
    std::vector<Rat> xs, ys;
    // At x = x0, f becomes a polynomial in y (the field generator):
    // coefficients from the coordinate vectors.
    for (long t = 0; static_cast<long>(xs.size()) <= target_deg; ++t) {
        Rat x0(t);
        // g(y) = sum_j (coeff vector of f evaluated at x0)_j y^j
        std::vector<Rat> g(d, Rat(0));
        Rat xp(1);
        for (long i = 0; i <= f.degree(); ++i) {
            FieldElement ci = f.coeff(i);
            for (long j = 0; j < d; ++j) g[j] += ci.coords()[j] * xp;
            xp *= x0;
        }
        QPoly gy(g);
        // degree of resultant drops if lc in y collapses; requires care only
        // for interpolation count, which we fixed at target_deg + 1.
        xs.push_back(x0);
        ys.push_back(qpoly_resultant(mp, gy));
    }
    return qpoly_interpolate(xs, ys);
}

// Trager: factor a squarefree monic f over a proper number field K.
std::vector<FPoly> trager_factor_squarefree(const FPoly& f) {
    const FieldPtr& k = f.field();
    if (f.degree() == 1) return {f};
    FieldElement gen = k->generator();
    for (long s = 0;; ++s) {
        // g(x) = f(x + s*gen); factors map back by x -> x - s*gen.
        FPoly shifted = f.compose(FPoly(k, {gen * k->from_long(s), k->one()}));
        QPoly norm = field_norm_poly(shifted);
        if (norm.is_zero()) continue;
        QPoly sq = qpoly_gcd(norm, norm.derivative());
        if (sq.degree() != 0) continue; // norm not squarefree; try next shift
        QFactorization nf = qpoly_factor(norm);
        std::vector<FPoly> out;
        FPoly rest = shifted;
        for (const auto& [qfac, mult] : nf.factors) {
            (void)mult;
            FPoly cand = fpoly_gcd(rest, FPoly::from_rational_poly(k, qfac));
            if (cand.degree() > 0) {
                rest = rest / cand;
                // undo the shift: factor of f is cand(x - s*gen)
                out.push_back(cand.compose(
                    FPoly(k, {(-gen) * k->from_long(s), k->one()})).monic());
            }
        }
        if (rest.degree() != 0)
            throw internal_error("trager: leftover factor");
        return out;
    }
}

} // namespace

FFactorization fpoly_factor(const FPoly& p) {
    if (p.is_zero()) throw domain_error("poly_factor: zero input");
    const FieldPtr& k = p.field();
    FFactorization out{p.leading(), {}};
    if (p.degree() == 0) return out;

    if (k->is_rationals()) {
        QFactorization qf = qpoly_factor(to_qpoly(p));
        for (const auto& [fac, mult] : qf.factors)
            out.factors.emplace_back(FPoly::from_rational_poly(k, fac), mult);
    } else {
        for (const auto& [sqfree, mult] : fpoly_squarefree(p))
            for (const FPoly& irr : trager_factor_squarefree(sqfree.monic()))
                out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return FPoly::less(a.first, b.first); });
    return out;
}

std::vector<std::pair<FieldElement, int>> fpoly_roots_in_field(const FPoly& p) {
    std::vector<std::pair<FieldElement, int>> roots;
    for (const auto& [fac, mult] : fpoly_factor(p).factors)
        if (fac.degree() == 1)
            roots.emplace_back(-fac.coeff(0), mult); // monic: x + c -> root -c
    return roots;
}

} // namespace pvkit
