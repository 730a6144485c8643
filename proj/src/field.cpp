#include "pvkit/field.hpp"

#include <sstream>

#include "pvkit/qfactor.hpp"

namespace pvkit {

// ---------- FieldElement ----------

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw internal_error("FieldElement without field");
    coords_.resize(field_->degree(), Rat(0));
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_) if (c != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (coords_.empty() || coords_[0] != 1) return false;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational_value() const {
    if (!is_rational()) throw domain_error("field element is not rational");
    return coords_.empty() ? Rat(0) : coords_[0];
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.field(), b.field()))
        throw domain_error("field mismatch in field-element arithmetic");
}
} // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(*this, o);
    std::vector<Rat> r = coords_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.coords_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(*this, o);
    std::vector<Rat> r = coords_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.coords_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> r = coords_;
    for (auto& c : r) c = -c;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(*this, o);
    QPoly prod = QPoly(coords_) * QPoly(o.coords_);
    QPoly red = prod % field_->minimal_polynomial();
    std::vector<Rat> r(field_->degree(), Rat(0));
    for (long i = 0; i <= red.degree(); ++i) r[i] = red.coeff(i);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw domain_error("inverse of zero field element");
    QPolyXgcd x = qpoly_xgcd(QPoly(coords_), field_->minimal_polynomial());
    if (x.g.degree() != 0)
        throw internal_error("non-invertible element: minimal polynomial reducible?");
    QPoly inv = x.u % field_->minimal_polynomial();
    std::vector<Rat> r(field_->degree(), Rat(0));
    for (long i = 0; i <= inv.degree(); ++i) r[i] = inv.coeff(i);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                            : static_cast<unsigned long>(e);
    FieldElement acc = field_->one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return same_field(field_, o.field_) && coords_ == o.coords_;
}

std::string FieldElement::to_string() const {
    return QPoly(coords_).to_string(field_->generator_name());
}

// ---------- ConstantsField ----------

FieldPtr ConstantsField::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<ConstantsField>(new ConstantsField());
        f->degree_ = 1;
        f->min_poly_ = QPoly({Rat(-1), Rat(1)}); // generator is 1 itself
        f->cyclo_order_ = 1;
        f->gen_name_ = "1";
        return f;
    }();
    return q;
}

FieldPtr ConstantsField::cyclotomic(long n) {
    if (n <= 0) throw domain_error("cyclotomic order must be positive");
    if (n <= 2) return rationals();
    auto f = std::shared_ptr<ConstantsField>(new ConstantsField());
    f->min_poly_ = cyclotomic_polynomial(n);
    f->degree_ = static_cast<int>(f->min_poly_.degree());
    f->cyclo_order_ = n;
    f->gen_name_ = (n == 4) ? "i" : ("zeta_" + std::to_string(n));
    return f;
}

FieldPtr ConstantsField::number_field(const QPoly& min_poly, const std::string& gen_name) {
    if (min_poly.degree() < 2)
        throw domain_error("number field minimal polynomial must have degree >= 2");
    if (!qpoly_is_irreducible(min_poly))
        throw domain_error("minimal polynomial is not irreducible over Q");
    QPoly monic = min_poly.monic();
    if (auto n = cyclotomic_index_of(monic)) return cyclotomic(*n);
    auto f = std::shared_ptr<ConstantsField>(new ConstantsField());
    f->min_poly_ = monic;
    f->degree_ = static_cast<int>(monic.degree());
    f->gen_name_ = gen_name;
    return f;
}

FieldElement ConstantsField::zero() const {
    return FieldElement(shared_from_this(), std::vector<Rat>(degree_, Rat(0)));
}

FieldElement ConstantsField::one() const { return from_rational(Rat(1)); }

FieldElement ConstantsField::from_rational(const Rat& r) const {
    std::vector<Rat> c(degree_, Rat(0));
    c[0] = r;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement ConstantsField::generator() const {
    if (is_rationals()) return one();
    std::vector<Rat> c(degree_, Rat(0));
    c[1] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement ConstantsField::element(std::vector<Rat> coords) const {
    return FieldElement(shared_from_this(), std::move(coords));
}

std::string ConstantsField::name() const {
    if (is_rationals()) return "Q";
    return "Q(" + gen_name_ + ")";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->minimal_polynomial() == b->minimal_polynomial();
}

// ---------- FieldEmbedding ----------

FieldEmbedding::FieldEmbedding(FieldPtr source, FieldPtr target, FieldElement gen_image)
    : source_(std::move(source)), target_(std::move(target)),
      gen_image_(std::move(gen_image)) {
    // verify the defining relation min_poly(image) = 0
    const QPoly& mp = source_->minimal_polynomial();
    FieldElement acc = target_->zero();
    for (long i = mp.degree(); i >= 0; --i)
        acc = acc * gen_image_ + target_->from_rational(mp.coeff(i));
    if (!acc.is_zero())
        throw domain_error("embedding image does not satisfy the minimal polynomial");
}

FieldEmbedding FieldEmbedding::identity(const FieldPtr& f) {
    return FieldEmbedding(f, f, f->generator());
}

FieldElement FieldEmbedding::apply(const FieldElement& e) const {
    if (!same_field(e.field(), source_))
        throw domain_error("embedding applied to element of a different field");
    FieldElement acc = target_->zero();
    const auto& c = e.coords();
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
        acc = acc * gen_image_ + target_->from_rational(c[i]);
    return acc;
}

// ---------- root_of_unity_order ----------

std::optional<long> root_of_unity_order(const FieldElement& c) {
    if (c.is_zero()) throw domain_error("root_of_unity_order: zero input");
    // If c^k = 1 then Q(c) = Q(zeta_k') for some k' | k with phi(k') <= degree.
    long d = c.field()->degree();
    long best = -1;
    for (long k = 1; k <= 2 * d * d + 4; ++k) {
        if (euler_phi(k) > d) continue;
        if (c.pow(k).is_one()) { best = k; break; }
    }
    if (best < 0) return std::nullopt;
    return best;
}

} // namespace pvkit
