#pragma once

#include <optional>

#include "pvkit/matrix.hpp"
#include "pvkit/ring.hpp"

namespace pvkit {

// Free difference module of finite rank: tau acts on the distinguished
// basis by the invertible matrix A (tau(e_j) = sum_i A[i][j] e_i), so
// coordinate vectors transform as c -> A*tau(c) and fixed vectors solve
// A*tau(v) = v. The recurrence form y(tau(x)) = B*y(x) corresponds to
// B = A^{-1}.
class DifferenceModule {
public:
    static DifferenceModule from_tau_matrix(RingPtr base, Mat<RingElement> a);
    static DifferenceModule from_system_matrix(RingPtr base, Mat<RingElement> b);
    static DifferenceModule scalar(const RingPtr& base, const RingElement& a); // M_a

    const RingPtr& base() const { return base_; }
    int rank() const { return static_cast<int>(a_.size()); }
    const Mat<RingElement>& tau_matrix() const { return a_; }
    const Mat<RingElement>& system_matrix() const { return a_inv_; }

    // tau-action on coordinate vectors: c -> A*tau(c), and its inverse
    std::vector<RingElement> tau_act(const std::vector<RingElement>& coords, long power = 1) const;

private:
    DifferenceModule() = default;
    RingPtr base_;
    Mat<RingElement> a_, a_inv_;
};

enum class ModuleConstruction { dual, tensor, dsum, hom };

// dual: (A^T)^{-1}; tensor: Kronecker product; dsum: block diagonal;
// hom(M, N) = dual(M) tensor N. Unary kinds ignore n.
DifferenceModule construct(ModuleConstruction kind, const DifferenceModule& m,
                           const DifferenceModule* n = nullptr);

struct FixedVectorSpace {
    FieldPtr constants; // C_R
    std::vector<std::vector<RingElement>> basis; // coordinate vectors, A*tau(v) = v
};

// C_R-basis of {v : A*tau(v) = v}. Completeness via an Abramov-style
// universal denominator plus a bounded-degree numerator ansatz
// (degree_cap, default 24).
FixedVectorSpace fixed_vectors(const DifferenceModule& m, int degree_cap = 24);

// fundamental matrix with tau-fixed columns iff dim fixed = rank
std::optional<Mat<RingElement>> is_trivial(const DifferenceModule& m, int degree_cap = 24);

// affine solution set of tau(y) = a*y + b over a field base
struct ScalarSolutions {
    std::optional<RingElement> particular;
    std::vector<RingElement> homogeneous; // C_R-basis
};
ScalarSolutions scalar_rational_solutions(const RingPtr& r, const RingElement& a,
                                          const RingElement& b, int degree_cap = 24);

// All solutions of tau(y) = B*y as a C_R-space (the fixed vectors of the
// module with system matrix B). Exposed for reuse by the solver's tests.
std::vector<std::vector<RatFunc>> rational_system_solutions(const RingPtr& r,
                                                            const Mat<RatFunc>& b,
                                                            int degree_cap = 24);

} // namespace pvkit
