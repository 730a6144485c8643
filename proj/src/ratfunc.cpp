#include "pvkit/ratfunc.hpp"

namespace pvkit {

RatFunc::RatFunc(FieldPtr field)
    : num_(field), den_(FPoly::constant(field->one())) {}

RatFunc::RatFunc(FPoly num, FPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::from_poly(FPoly p) {
    FieldPtr k = p.field();
    return RatFunc(std::move(p), FPoly::constant(k->one()));
}

RatFunc RatFunc::constant(const FieldElement& c) {
    return from_poly(FPoly::constant(c));
}

RatFunc RatFunc::x(const FieldPtr& k) { return from_poly(FPoly::x(k)); }

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = FPoly::constant(num_.field()->one());
        return;
    }
    FPoly g = fpoly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FieldElement lead = den_.leading();
    if (!lead.is_one()) {
        FieldElement inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

bool RatFunc::is_one() const {
    return den_.degree() == 0 && num_.degree() == 0 && !num_.is_zero() &&
           num_.constant_value().is_one();
}

FieldElement RatFunc::constant_value() const {
    if (!is_constant()) throw domain_error("rational function is not constant");
    return num_.is_zero() ? field()->zero() : num_.constant_value();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw domain_error("inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
    RatFunc base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                            : static_cast<unsigned long>(e);
    RatFunc acc = RatFunc::constant(field()->one());
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

RatFunc RatFunc::shift_arg(const FieldElement& h) const {
    return RatFunc(num_.shift(h), den_.shift(h));
}

RatFunc RatFunc::scale_arg(const FieldElement& s) const {
    return RatFunc(num_.scale_arg(s), den_.scale_arg(s));
}

RatFunc RatFunc::map_coefficients(const FieldEmbedding& emb) const {
    return RatFunc(num_.map_coefficients(emb), den_.map_coefficients(emb));
}

namespace {
long poly_x_valuation(const FPoly& p) {
    for (long i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) return i;
    throw internal_error("x_valuation of zero polynomial");
}
} // namespace

long RatFunc::x_valuation() const {
    if (is_zero()) throw domain_error("x_valuation of zero");
    return poly_x_valuation(num_) - poly_x_valuation(den_);
}

std::string RatFunc::to_string(const std::string& var) const {
    if (is_polynomial()) return num_.to_string(var);
    std::string n = num_.to_string(var);
    std::string d = den_.to_string(var);
    return "(" + n + ")/(" + d + ")";
}

} // namespace pvkit
