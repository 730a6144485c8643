#include "pvkit/qpoly.hpp"

#include <sstream>

namespace pvkit {

namespace {
const Rat kZero(0);
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rat& r) {
    QPoly p;
    if (r != 0) p.c_ = {r};
    return p;
}

QPoly QPoly::x() { return QPoly({Rat(0), Rat(1)}); }

QPoly QPoly::monomial(const Rat& c, std::size_t deg) {
    QPoly p;
    if (c != 0) {
        p.c_.assign(deg + 1, Rat(0));
        p.c_[deg] = c;
    }
    return p;
}

const Rat& QPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

const Rat& QPoly::leading() const {
    if (c_.empty()) throw internal_error("leading coefficient of zero polynomial");
    return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    std::vector<Rat> r = c_;
    for (auto& v : r) v = -v;
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rat& r) const {
    std::vector<Rat> out = c_;
    for (auto& v : out) v *= r;
    return QPoly(std::move(out));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly(), a};
    std::vector<Rat> rem = a.c_;
    std::vector<Rat> quo(a.c_.size() - b.c_.size() + 1, Rat(0));
    const Rat& lb = b.leading();
    for (long i = static_cast<long>(rem.size()) - 1;
         i >= static_cast<long>(b.c_.size()) - 1; --i) {
        if (rem[i] == 0) continue;
        Rat q = rem[i] / lb;
        quo[i - (b.c_.size() - 1)] = q;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            rem[i - (b.c_.size() - 1) + j] -= q * b.c_[j];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(r));
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / leading());
}

QPoly QPoly::shift(const Rat& h) const {
    return compose(QPoly({h, Rat(1)}));
}

QPoly QPoly::scale_arg(const Rat& s) const {
    std::vector<Rat> r = c_;
    Rat pw(1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] *= pw;
        pw *= s;
    }
    return QPoly(std::move(r));
}

QPoly QPoly::compose(const QPoly& inner) const {
    QPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * inner + QPoly::constant(*it);
    return acc;
}

std::string QPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat c = c_[i];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0) {
            os << rat_to_string(c);
        } else {
            if (c != 1) os << rat_to_string(c) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPolyXgcd qpoly_xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0 = QPoly::constant(1), s1;
    QPoly t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = QPoly::divmod(r0, r1);
        QPoly s2 = s0 - q * s1;
        QPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        Rat inv = 1 / r0.leading();
        r0 = r0 * inv; s0 = s0 * inv; t0 = t0 * inv;
    }
    return {r0, s0, t0};
}

Rat qpoly_resultant(const QPoly& a, const QPoly& b) {
    // PRS with explicit leading-coefficient bookkeeping.
    if (a.is_zero() || b.is_zero()) return Rat(0);
    QPoly f = a, g = b;
    Rat res(1);
    int sign = 1;
    while (g.degree() > 0) {
        QPoly r = f % g;
        long df = f.degree(), dg = g.degree(), dr = r.degree();
        if ((df % 2) && (dg % 2)) sign = -sign;
        res *= rat_pow(g.leading(), df - (r.is_zero() ? 0 : dr));
        if (r.is_zero()) return Rat(0);
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant
    res *= rat_pow(g.coeff(0), f.degree());
    return res * Rat(sign);
}

std::vector<std::pair<QPoly, int>> qpoly_squarefree(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.is_zero()) throw domain_error("squarefree decomposition of zero");
    QPoly f = p.monic();
    if (f.degree() == 0) return out;
    QPoly df = f.derivative();
    QPoly a = qpoly_gcd(f, df);
    QPoly b = f / a;
    QPoly c = df / a;
    int i = 1;
    while (b.degree() > 0) {
        QPoly d = c - b.derivative();
        QPoly fac = qpoly_gcd(b, d);
        if (fac.degree() > 0) out.emplace_back(fac, i);
        b = b / fac;
        c = d / fac;
        ++i;
    }
    return out;
}

QPoly qpoly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size()) throw internal_error("interpolation size mismatch");
    QPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly basis = QPoly::constant(1);
        Rat denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            basis = basis * QPoly({-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + basis * (ys[i] / denom);
    }
    return acc;
}

} // namespace pvkit
