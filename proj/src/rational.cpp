#include "pvkit/rational.hpp"

namespace pvkit {

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw domain_error("division by zero in rat_pow");
        return Rat(0);
    }
    Rat b = base;
    bool invert = e < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul
                             : static_cast<unsigned long>(e);
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), k);
    out.canonicalize();
    if (invert) out = 1 / out;
    return out;
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw usage_error("empty rational literal");
    try {
        Rat r(s);
        r.canonicalize();
        if (r.get_den() == 0) throw usage_error("zero denominator in rational literal");
        return r;
    } catch (const std::invalid_argument&) {
        throw usage_error("malformed rational: '" + s + "'");
    }
}

namespace {

void factor_int_into(Int n, long mult, std::map<Int, long>& out) {
    // Trial division; inputs here are desk-scale constants.
    if (n < 0) n = -n;
    if (n == 1) return;
    Int p = 2;
    while (p * p <= n) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out[p] += mult;
            n /= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) out[n] += mult;
}

} // namespace

RatFactorization rat_factor(const Rat& r) {
    if (r == 0) throw domain_error("rat_factor: zero input");
    RatFactorization f;
    f.sign = (r < 0) ? -1 : 1;
    factor_int_into(r.get_num(), 1, f.exponents);
    factor_int_into(r.get_den(), -1, f.exponents);
    for (auto it = f.exponents.begin(); it != f.exponents.end();)
        it = (it->second == 0) ? f.exponents.erase(it) : std::next(it);
    return f;
}

std::optional<long> rat_log_exact(const Rat& r, const Rat& q) {
    if (r == 0 || q == 0) return std::nullopt;
    if (r == 1) return 0;
    if (q == 1 || q == -1) {
        if (r == q) return 1;
        return std::nullopt;
    }
    RatFactorization fr = rat_factor(r);
    RatFactorization fq = rat_factor(q);
    if (fq.exponents.empty()) return std::nullopt; // q = +-1 handled above
    // Candidate exponent from the first prime of q.
    auto [p0, e0] = *fq.exponents.begin();
    auto it = fr.exponents.find(p0);
    long k;
    if (it == fr.exponents.end()) {
        k = 0;
    } else {
        if (it->second % e0 != 0) return std::nullopt;
        k = it->second / e0;
    }
    if (rat_pow(q, k) == r) return k;
    return std::nullopt;
}

} // namespace pvkit
