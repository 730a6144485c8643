#include "pvkit/lattice.hpp"

#include <algorithm>

namespace pvkit {

std::size_t imat_rows(const IMat& a) { return a.size(); }
std::size_t imat_cols(const IMat& a) { return a.empty() ? 0 : a[0].size(); }

IMat imat_identity(std::size_t n) {
    IMat r(n, IVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

IMat imat_mul(const IMat& a, const IMat& b) {
    std::size_t m = imat_rows(a), k = imat_cols(a), n = imat_cols(b);
    if (k != imat_rows(b)) throw internal_error("imat_mul: shape mismatch");
    IMat r(m, IVec(n, Int(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

IVec imat_apply(const IMat& a, const IVec& v) {
    IVec r(imat_rows(a), Int(0));
    for (std::size_t i = 0; i < imat_rows(a); ++i) {
        if (a[i].size() != v.size()) throw internal_error("imat_apply: shape mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    }
    return r;
}

IMat imat_transpose(const IMat& a) {
    IMat r(imat_cols(a), IVec(imat_rows(a), Int(0)));
    for (std::size_t i = 0; i < imat_rows(a); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

Int imat_det(IMat a) {
    std::size_t n = imat_rows(a);
    if (n != imat_cols(a)) throw internal_error("imat_det: not square");
    // Bareiss fraction-free elimination
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return n == 0 ? Int(1) : a[n - 1][n - 1] * sign;
}

SmithForm smith_normal_form(const IMat& a) {
    std::size_t m = imat_rows(a), n = imat_cols(a);
    SmithForm s;
    s.u = imat_identity(m);
    s.v = imat_identity(n);
    s.d = a;
    IMat& d = s.d;
    IMat& u = s.u;
    IMat& v = s.v;

    auto row_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t j = 0; j < n; ++j) d[dst][j] += c * d[src][j];
        for (std::size_t j = 0; j < m; ++j) u[dst][j] += c * u[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t i = 0; i < m; ++i) d[i][dst] += c * d[i][src];
        for (std::size_t i = 0; i < n; ++i) v[i][dst] += c * v[i][src];
    };
    auto row_swap = [&](std::size_t i1, std::size_t i2) {
        std::swap(d[i1], d[i2]);
        std::swap(u[i1], u[i2]);
    };
    auto col_swap = [&](std::size_t j1, std::size_t j2) {
        for (std::size_t i = 0; i < m; ++i) std::swap(d[i][j1], d[i][j2]);
        for (std::size_t i = 0; i < n; ++i) std::swap(v[i][j1], v[i][j2]);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) d[i][j] = -d[i][j];
        for (std::size_t j = 0; j < m; ++j) u[i][j] = -u[i][j];
    };

    std::size_t t = 0;
    const std::size_t lim = std::min(m, n);
    while (t < lim) {
        // find nonzero pivot of smallest absolute value in the submatrix
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d[i][j] != 0 &&
                    (!found || abs(d[i][j]) < abs(d[pi][pj]))) {
                    pi = i; pj = j; found = true;
                }
        if (!found) break;
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d[i][t] == 0) continue;
                Int q = d[i][t] / d[t][t];
                row_add(i, t, -q);
                if (d[i][t] != 0) { // remainder smaller than pivot: swap up
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d[t][j] == 0) continue;
                Int q = d[t][j] / d[t][t];
                col_add(j, t, -q);
                if (d[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        // enforce divisibility of the remaining submatrix by the pivot
        bool redo = false;
        for (std::size_t i = t + 1; i < m && !redo; ++i)
            for (std::size_t j = t + 1; j < n && !redo; ++j)
                if (d[i][j] % d[t][t] != 0) {
                    row_add(t, i, Int(1));
                    redo = true;
                }
        if (redo) continue; // re-clean row/column t
        if (d[t][t] < 0) row_negate(t);
        ++t;
    }
    for (std::size_t i = 0; i < lim; ++i) {
        s.invariant_factors.push_back(i < m && i < n ? d[i][i] : Int(0));
        if (s.invariant_factors.back() != 0) s.rank = i + 1;
    }
    return s;
}

std::vector<IVec> integer_kernel(const IMat& a) {
    std::size_t n = imat_cols(a);
    if (imat_rows(a) == 0 || n == 0) {
        // kernel is all of Z^n
        std::vector<IVec> basis;
        for (std::size_t j = 0; j < n; ++j) {
            IVec e(n, Int(0));
            e[j] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    SmithForm s = smith_normal_form(a);
    std::vector<IVec> basis;
    for (std::size_t j = s.rank; j < n; ++j) {
        IVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = s.v[i][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

std::optional<IVec> solve_integer_system(const IMat& a, const IVec& b) {
    std::size_t m = imat_rows(a), n = imat_cols(a);
    if (m == 0) return IVec(n, Int(0));
    SmithForm s = smith_normal_form(a);
    IVec w = imat_apply(s.u, b);
    IVec y(n, Int(0));
    for (std::size_t i = 0; i < m; ++i) {
        Int di = (i < s.invariant_factors.size()) ? s.invariant_factors[i] : Int(0);
        if (di == 0) {
            if (w[i] != 0) return std::nullopt;
        } else {
            if (w[i] % di != 0) return std::nullopt;
            if (i < n) y[i] = w[i] / di;
        }
    }
    return imat_apply(s.v, y);
}

// ---------- IntegerLattice ----------

IntegerLattice::IntegerLattice(std::size_t ambient_dim, std::vector<IVec> generators)
    : n_(ambient_dim) {
    for (const auto& g : generators)
        if (g.size() != n_) throw internal_error("lattice generator of wrong dimension");
    // reduce arbitrary generators to an independent basis via SNF
    if (!generators.empty()) {
        IMat g(n_, IVec(generators.size(), Int(0)));
        for (std::size_t j = 0; j < generators.size(); ++j)
            for (std::size_t i = 0; i < n_; ++i) g[i][j] = generators[j][i];
        SmithForm s = smith_normal_form(g);
        // columns of U^-1 * D: d_j * (U^-1 e_j), for nonzero d_j
        // U^-1 column j solves U x = e_j; easier: invert by solving with SNF of U.
        // U is unimodular, so invert by Gauss over rationals is exact; use adjugate
        // via repeated solve instead: x = U^-1 e_j  <=>  row ops; reuse smith.
        // Simpler: track via d = U g v => g v = U^-1 d; columns of g*v give basis.
        IMat gv = imat_mul(g, s.v);
        for (std::size_t j = 0; j < s.rank; ++j) {
            IVec col(n_);
            for (std::size_t i = 0; i < n_; ++i) col[i] = gv[i][j];
            basis_.push_back(std::move(col));
        }
    }
    // sign-normalize: first nonzero entry of each basis vector positive
    for (auto& v : basis_)
        for (const auto& e : v) {
            if (e == 0) continue;
            if (e < 0)
                for (auto& x : v) x = -x;
            break;
        }
    // smith data of the basis matrix
    IMat b(n_, IVec(basis_.size(), Int(0)));
    for (std::size_t j = 0; j < basis_.size(); ++j)
        for (std::size_t i = 0; i < n_; ++i) b[i][j] = basis_[j][i];
    if (basis_.empty()) {
        smith_.u = imat_identity(n_);
        smith_.v = IMat{};
        smith_.d = IMat(n_, IVec{});
        smith_.rank = 0;
    } else {
        smith_ = smith_normal_form(b);
    }
    // invert the unimodular U by integer Gauss-Jordan (entries stay integral
    // only at the end; use rational elimination then round)
    {
        std::size_t n = n_;
        std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(2 * n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rat(smith_.u[i][j]);
            aug[i][n + i] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && aug[p][c] == 0) ++p;
            if (p == n) throw internal_error("singular unimodular matrix?");
            std::swap(aug[c], aug[p]);
            Rat inv = 1 / aug[c][c];
            for (auto& x : aug[c]) x *= inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || aug[i][c] == 0) continue;
                Rat f = aug[i][c];
                for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
            }
        }
        u_inv_.assign(n, IVec(n, Int(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (aug[i][n + j].get_den() != 1)
                    throw internal_error("unimodular inverse not integral");
                u_inv_[i][j] = aug[i][n + j].get_num();
            }
    }
}

IntegerLattice IntegerLattice::zero(std::size_t ambient_dim) {
    return IntegerLattice(ambient_dim, {});
}

IntegerLattice IntegerLattice::full(std::size_t ambient_dim) {
    std::vector<IVec> gens;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        IVec e(ambient_dim, Int(0));
        e[i] = 1;
        gens.push_back(e);
    }
    return IntegerLattice(ambient_dim, gens);
}

IVec IntegerLattice::reduce(const IVec& v) const {
    if (v.size() != n_) throw internal_error("lattice reduce: wrong dimension");
    IVec w = imat_apply(smith_.u, v);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        const Int& dj = smith_.invariant_factors[j];
        Int r = w[j] % dj;
        if (r < 0) r += dj;
        w[j] = r;
    }
    return imat_apply(u_inv_, w);
}

IVec IntegerLattice::decompose_offset(const IVec& v) const {
    IVec w = imat_apply(smith_.u, v);
    IVec zq(basis_.size(), Int(0));
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        const Int& dj = smith_.invariant_factors[j];
        Int r = w[j] % dj;
        if (r < 0) r += dj;
        zq[j] = (w[j] - r) / dj;
    }
    // coefficients with respect to basis_ are V * zq
    if (basis_.empty()) return {};
    return imat_apply(smith_.v, zq);
}

bool IntegerLattice::contains(const IVec& v) const {
    IVec r = reduce(v);
    for (const auto& c : r)
        if (c != 0) return false;
    return true;
}

bool IntegerLattice::operator==(const IntegerLattice& o) const {
    if (n_ != o.n_ || rank() != o.rank()) return false;
    for (const auto& b : basis_)
        if (!o.contains(b)) return false;
    for (const auto& b : o.basis_)
        if (!contains(b)) return false;
    return true;
}

std::vector<Int> IntegerLattice::quotient_torsion() const {
    std::vector<Int> out;
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (smith_.invariant_factors[j] > 1) out.push_back(smith_.invariant_factors[j]);
    return out;
}

} // namespace pvkit
