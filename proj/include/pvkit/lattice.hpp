#pragma once

#include <optional>
#include <vector>

#include "pvkit/rational.hpp"

namespace pvkit {

// row-major integer matrix; rows may be empty (0 x n or m x 0 supported)
using IMat = std::vector<std::vector<Int>>;
using IVec = std::vector<Int>;

std::size_t imat_rows(const IMat& a);
std::size_t imat_cols(const IMat& a);
IMat imat_identity(std::size_t n);
IMat imat_mul(const IMat& a, const IMat& b);
IVec imat_apply(const IMat& a, const IVec& v);
IMat imat_transpose(const IMat& a);
Int imat_det(IMat a); // square only; fraction-free elimination

// Smith normal form: U*A*V = D with U, V unimodular, D diagonal with
// nonnegative entries and divisibility chain d1 | d2 | ...
struct SmithForm {
    IMat u, d, v;
    std::vector<Int> invariant_factors; // diagonal of D up to min(m, n)
    std::size_t rank = 0;               // number of nonzero invariant factors
};
SmithForm smith_normal_form(const IMat& a);

// Basis of {k : A k = 0} as columns (returned as a list of vectors).
std::vector<IVec> integer_kernel(const IMat& a);

// One solution of A x = b over the integers, if any.
std::optional<IVec> solve_integer_system(const IMat& a, const IVec& b);

// Sublattice of Z^n given by a list of generators (not necessarily a basis).
class IntegerLattice {
public:
    IntegerLattice(std::size_t ambient_dim, std::vector<IVec> generators);
    static IntegerLattice zero(std::size_t ambient_dim);
    static IntegerLattice full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return n_; }
    std::size_t rank() const { return basis_.size(); }
    // reduced basis vectors (columns of the generator matrix after SNF cleanup)
    const std::vector<IVec>& basis() const { return basis_; }
    // Smith data of the basis matrix (n x rank), cached
    const SmithForm& smith() const { return smith_; }

    bool contains(const IVec& v) const;
    bool operator==(const IntegerLattice& o) const;

    // canonical representative of v modulo the lattice: Smith coordinates
    // reduced into [0, d_i) on torsion directions
    IVec reduce(const IVec& v) const;
    // coefficients z with v - reduce(v) == sum z_j * basis_j
    IVec decompose_offset(const IVec& v) const;

    // invariant factors of Z^n / L that exceed 1, plus the free rank
    std::vector<Int> quotient_torsion() const;
    std::size_t quotient_free_rank() const { return n_ - basis_.size(); }

private:
    std::size_t n_;
    std::vector<IVec> basis_; // independent generators
    SmithForm smith_;         // of the n x rank basis matrix
    IMat u_inv_;              // inverse of smith_.u
};

} // namespace pvkit
