#include "pvkit/qfactor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace pvkit {

namespace {

// ---------- arithmetic mod a word-sized prime ----------

using u64 = std::uint64_t;

u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}
u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

// dense poly mod p, ascending coefficients, trimmed
using PPoly = std::vector<u64>;

void ptrim(PPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }
long pdeg(const PPoly& a) { return static_cast<long>(a.size()) - 1; }

PPoly pmul(const PPoly& a, const PPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    ptrim(r);
    return r;
}

PPoly psub(const PPoly& a, const PPoly& b, u64 p) {
    PPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
    ptrim(r);
    return r;
}

std::pair<PPoly, PPoly> pdivmod(const PPoly& a, const PPoly& b, u64 p) {
    if (b.empty()) throw internal_error("mod-p division by zero");
    if (pdeg(a) < pdeg(b)) return {{}, a};
    PPoly rem = a;
    PPoly quo(a.size() - b.size() + 1, 0);
    u64 li = invm(b.back(), p);
    for (long i = pdeg(rem); i >= pdeg(b); --i) {
        if (rem[i] == 0) continue;
        u64 q = mulm(rem[i], li, p);
        quo[i - pdeg(b)] = q;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[i - pdeg(b) + j] = subm(rem[i - pdeg(b) + j], mulm(q, b[j], p), p);
    }
    ptrim(rem);
    ptrim(quo);
    return {quo, rem};
}

PPoly pmod(const PPoly& a, const PPoly& b, u64 p) { return pdivmod(a, b, p).second; }

PPoly pmonic(PPoly a, u64 p) {
    if (a.empty()) return a;
    u64 li = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, li, p);
    return a;
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a, p);
}

struct PXgcd { PPoly g, u, v; };
PXgcd pxgcd(const PPoly& a, const PPoly& b, u64 p) {
    PPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(r0, r1, p);
        PPoly s2 = psub(s0, pmul(q, s1, p), p);
        PPoly t2 = psub(t0, pmul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.empty()) {
        u64 li = invm(r0.back(), p);
        for (auto& c : r0) c = mulm(c, li, p);
        for (auto& c : s0) c = mulm(c, li, p);
        for (auto& c : t0) c = mulm(c, li, p);
    }
    return {r0, s0, t0};
}

PPoly ppowmod(PPoly base, Int e, const PPoly& m, u64 p) {
    PPoly r = {1};
    base = pmod(base, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

PPoly pderiv(const PPoly& a, u64 p) {
    if (a.size() <= 1) return {};
    PPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulm(a[i], i % p, p);
    ptrim(r);
    return r;
}

void equal_degree_split(const PPoly& f, long d, u64 p, std::mt19937_64& rng,
                        std::vector<PPoly>& out) {
    if (pdeg(f) == d) {
        out.push_back(pmonic(f, p));
        return;
    }
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        PPoly a(pdeg(f), 0);
        for (auto& c : a) c = rng() % p;
        ptrim(a);
        if (pdeg(a) < 1) continue;
        PPoly g = pgcd(f, a, p);
        if (!(pdeg(g) > 0 && pdeg(g) < pdeg(f))) {
            PPoly b = psub(ppowmod(a, e, f, p), {1}, p);
            g = pgcd(f, b, p);
        }
        if (pdeg(g) > 0 && pdeg(g) < pdeg(f)) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(pdivmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

// Factor a squarefree polynomial mod p into monic irreducibles.
std::vector<PPoly> factor_mod_p(const PPoly& f0, u64 p) {
    std::vector<PPoly> out;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    PPoly f = pmonic(f0, p);
    PPoly h = {0, 1};
    const PPoly xpoly = {0, 1};
    long d = 0;
    while (pdeg(f) > 0) {
        ++d;
        if (2 * d > pdeg(f)) {
            out.push_back(f);
            break;
        }
        h = ppowmod(h, Int(static_cast<unsigned long>(p)), f, p);
        PPoly g = pgcd(f, psub(h, xpoly, p), p);
        if (pdeg(g) > 0) {
            equal_degree_split(g, d, p, rng, out);
            f = pdivmod(f, g, p).first;
            h = pmod(h, f, p);
        }
    }
    return out;
}

// ---------- integer polynomial helpers ----------

using ZPoly = std::vector<Int>; // ascending, trimmed

void ztrim(ZPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }
long zdeg(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

// primitive integer polynomial with positive leading coefficient
ZPoly to_primitive_z(const QPoly& p) {
    Int den(1);
    for (const auto& c : p.coeffs()) {
        Int d = c.get_den();
        den = den / gcd(den, d) * d;
    }
    ZPoly z;
    for (const auto& c : p.coeffs()) z.push_back(Int(c.get_num()) * (den / c.get_den()));
    Int g(0);
    for (const auto& c : z) g = gcd(g, c);
    if (g > 1) for (auto& c : z) c /= g;
    ztrim(z);
    if (!z.empty() && z.back() < 0) for (auto& c : z) c = -c;
    return z;
}

QPoly z_to_q(const ZPoly& z) {
    std::vector<Rat> c;
    c.reserve(z.size());
    for (const auto& v : z) c.emplace_back(v);
    return QPoly(std::move(c));
}

PPoly z_mod_p(const ZPoly& z, u64 p) {
    PPoly r(z.size());
    Int pp(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < z.size(); ++i) {
        Int m = z[i] % pp;
        if (m < 0) m += pp;
        r[i] = m.get_ui();
    }
    ptrim(r);
    return r;
}

Int symmetric_mod(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    if (2 * a > m) a -= m;
    return a;
}

// Factor a squarefree primitive integer polynomial (degree >= 1) into
// irreducible primitive integer polynomials: Zassenhaus with linear
// multifactor Hensel lifting.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    const long n = zdeg(f);
    if (n == 1) return {f};
    const Int L = f.back();

    static const u64 kPrimes[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                                  1000099, 1000117, 1000121, 1000133, 1000151,
                                  1000159, 1000171, 1000183, 1000187, 1000193};
    u64 p = 0;
    PPoly fp;
    for (u64 cand : kPrimes) {
        Int lc_mod = L % Int(static_cast<unsigned long>(cand));
        if (lc_mod == 0) continue;
        PPoly g = z_mod_p(f, cand);
        if (pdeg(g) != n) continue;
        if (pdeg(pgcd(g, pderiv(g, cand), cand)) == 0) {
            p = cand;
            fp = std::move(g);
            break;
        }
    }
    if (p == 0) throw internal_error("zassenhaus: no good prime found");

    std::vector<PPoly> w = factor_mod_p(fp, p);
    if (w.size() == 1) return {f};

    // coefficient bound: |coef of L * (factor of f)| <= 2^n * |L| * ||f||_2
    Int norm2_sq(0);
    for (const auto& c : f) norm2_sq += c * c;
    Int norm2 = sqrt(norm2_sq) + 1;
    Int B = abs(L) * norm2;
    B <<= static_cast<unsigned long>(n + 1);
    Int pk(static_cast<unsigned long>(p));
    int K = 1;
    while (pk <= 2 * B) { pk *= Int(static_cast<unsigned long>(p)); ++K; }

    // Lifted factors W_i with f == prod W_i (mod p^K); W_0 carries the exact
    // leading coefficient L, the others are monic.
    const std::size_t r = w.size();
    std::vector<ZPoly> W(r);
    for (std::size_t i = 0; i < r; ++i) {
        W[i].assign(w[i].size(), Int(0));
        for (std::size_t j = 0; j < w[i].size(); ++j)
            W[i][j] = Int(static_cast<unsigned long>(w[i][j]));
    }
    {
        // fold L into W[0] mod p, then pin the top coefficient to exact L
        Int pp(static_cast<unsigned long>(p));
        Int lm = L % pp; if (lm < 0) lm += pp;
        for (auto& c : W[0]) c = (c * lm) % pp;
        W[0].back() = L;
    }

    // Bezout multipliers sigma_i mod p with sum sigma_i * prod_{j!=i} W_j == 1
    std::vector<PPoly> sigma(r);
    for (std::size_t i = 0; i < r; ++i) {
        PPoly u = {1};
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) u = pmod(pmul(u, z_mod_p(W[j], p), p), w[i], p);
        PXgcd x = pxgcd(u, w[i], p);
        if (pdeg(x.g) != 0) throw internal_error("zassenhaus: multiplier gcd != 1");
        sigma[i] = x.u;
    }

    Int modulus(static_cast<unsigned long>(p));
    Int pprime(static_cast<unsigned long>(p));
    for (int step = 1; step < K; ++step) {
        ZPoly prod = {Int(1)};
        for (const auto& Wi : W) prod = zmul(prod, Wi);
        ZPoly err = zsub(f, prod);
        // err is divisible by modulus; reduce e = err/modulus mod p
        PPoly e(err.size(), 0);
        for (std::size_t i = 0; i < err.size(); ++i) {
            Int q = err[i] / modulus;
            if (err[i] % modulus != 0)
                throw internal_error("zassenhaus: lift error not divisible");
            Int m = q % pprime;
            if (m < 0) m += pprime;
            e[i] = m.get_ui();
        }
        ptrim(e);
        for (std::size_t i = 0; i < r; ++i) {
            PPoly delta = pmod(pmul(e, sigma[i], p), w[i], p);
            for (std::size_t j = 0; j < delta.size(); ++j)
                W[i][j] += modulus * Int(static_cast<unsigned long>(delta[j]));
        }
        modulus *= pprime;
    }

    // recombination
    std::vector<ZPoly> result;
    std::vector<std::size_t> live(r);
    for (std::size_t i = 0; i < r; ++i) live[i] = i;
    ZPoly fcur = f;
    QPoly fq = z_to_q(fcur);
    Int Lcur = fcur.back();

    auto try_subset = [&](const std::vector<std::size_t>& subset) -> bool {
        ZPoly g = {Lcur % modulus};
        for (std::size_t idx : subset) {
            g = zmul(g, W[idx]);
            for (auto& c : g) { c %= modulus; if (c < 0) c += modulus; }
            ztrim(g);
        }
        for (auto& c : g) c = symmetric_mod(c, modulus);
        ztrim(g);
        if (g.empty()) return false;
        ZPoly gp = to_primitive_z(z_to_q(g));
        QPoly gq = z_to_q(gp);
        if (gq.degree() < 1) return false;
        auto [quo, rem] = QPoly::divmod(fq, gq);
        if (!rem.is_zero()) return false;
        result.push_back(gp);
        fq = quo;
        fcur = to_primitive_z(fq);
        fq = z_to_q(fcur);
        Lcur = fcur.empty() ? Int(1) : fcur.back();
        std::vector<std::size_t> keep;
        for (std::size_t idx : live)
            if (std::find(subset.begin(), subset.end(), idx) == subset.end())
                keep.push_back(idx);
        live = std::move(keep);
        return true;
    };

    std::size_t s = 1;
    while (2 * s <= live.size()) {
        // enumerate subsets of size s of `live`
        std::vector<std::size_t> pick(s);
        std::vector<std::size_t> stack;
        bool found = false;
        std::function<bool(std::size_t, std::size_t)> rec =
            [&](std::size_t start, std::size_t depth) -> bool {
            if (depth == s) {
                if (try_subset(pick)) return true;
                return false;
            }
            for (std::size_t i = start; i < live.size(); ++i) {
                pick[depth] = live[i];
                if (rec(i + 1, depth + 1)) return true;
            }
            return false;
        };
        found = rec(0, 0);
        if (!found) ++s;
        // after a hit, retry same size against the reduced factor pool
    }
    if (zdeg(fcur) >= 1) result.push_back(fcur);
    return result;
}

std::map<long, QPoly>& cyclotomic_cache() {
    static std::map<long, QPoly> cache;
    return cache;
}

} // namespace

QFactorization qpoly_factor(const QPoly& p) {
    if (p.is_zero()) throw domain_error("poly_factor: zero input");
    QFactorization out;
    out.unit = p.leading();
    if (p.degree() == 0) return out;
    for (const auto& [sqfree, mult] : qpoly_squarefree(p)) {
        ZPoly z = to_primitive_z(sqfree);
        for (const ZPoly& irr : zassenhaus(z))
            out.factors.emplace_back(z_to_q(irr).monic(), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.degree() != b.first.degree())
                      return a.first.degree() < b.first.degree();
                  return a.first.coeffs() < b.first.coeffs();
              });
    return out;
}

bool qpoly_is_irreducible(const QPoly& p) {
    if (p.degree() < 1) return false;
    auto f = qpoly_factor(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

QPoly cyclotomic_polynomial(long n) {
    if (n < 1) throw domain_error("cyclotomic order must be positive");
    auto& cache = cyclotomic_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by Phi_d for all proper divisors d
    std::vector<Rat> xn(n + 1, Rat(0));
    xn[0] = Rat(-1);
    xn[n] = Rat(1);
    QPoly phi(std::move(xn));
    for (long d = 1; d < n; ++d)
        if (n % d == 0) phi = phi / cyclotomic_polynomial(d);
    cache[n] = phi;
    return phi;
}

long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::optional<long> cyclotomic_index_of(const QPoly& p) {
    long d = p.degree();
    if (d < 1) return std::nullopt;
    for (long n = 1; n <= 2 * d * d + 4; ++n) {
        if (euler_phi(n) != d) continue;
        if (cyclotomic_polynomial(n) == p) return n;
    }
    return std::nullopt;
}

} // namespace pvkit
