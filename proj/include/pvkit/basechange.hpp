#pragma once

#include "pvkit/module.hpp"

namespace pvkit {

// Same difference ring with the constants enlarged to C'; tau acts as the
// identity on the new constants.
struct ExtendedRing {
    RingPtr ring;
    FieldEmbedding embedding; // old constants -> new
    std::vector<std::string> report;
};
ExtendedRing extend_constants(const RingPtr& r, const FieldPtr& cprime);

// coefficientwise transport along the embedding
RingElement base_extend(const ExtendedRing& ext, const RingElement& e);

struct CommutationReport {
    bool pass = false;
    std::size_t automorphisms = 0; // |Gal(C'/C)|
    std::vector<std::string> trace;
};
// sigma tau = tau sigma for every automorphism of C' fixing the old
// constants, on seeded random elements plus any supplied session elements
CommutationReport galois_commutation_check(const ExtendedRing& ext, std::uint64_t seed = 2026,
                                           const std::vector<RingElement>& session_elements = {});

struct SplitResult {
    FieldPtr constants;        // splitting field C'
    ExtendedRing extended;     // input ring extended to C'
    DifferenceModule diagonal; // system matrix diag(eigenvalues) over C'
    std::vector<FieldElement> eigenvalues;
    Mat<RingElement> p, p_inv; // columns of p are eigenvectors; p_inv b p diagonal
    QPoly extension_min_poly;  // minimal polynomial of the C'-generator
    std::vector<std::string> report;
};
// constant system matrix with squarefree characteristic polynomial
SplitResult split_and_analyze(const DifferenceModule& m);

} // namespace pvkit
