#pragma once

#include "mspectra/multicomplex.hpp"

namespace mspectra {

/// Bidegree regradings of the bicomplex / 4-multicomplex comparison:
/// j places M^{a,b} at (2a-b, a); q places L^{a,b} at (b, 2b-a).
constexpr Bidegree j_bidegree_of_source(Bidegree m_at) {
    return Bidegree{2 * m_at.p - m_at.q, m_at.p};
}
constexpr Bidegree j_source_bidegree(Bidegree j_at) { return Bidegree{j_at.q, 2 * j_at.q - j_at.p}; }
constexpr Bidegree q_bidegree_of_source(Bidegree l_at) {
    return Bidegree{l_at.q, 2 * l_at.q - l_at.p};
}
constexpr Bidegree q_source_bidegree(Bidegree q_at) { return Bidegree{2 * q_at.p - q_at.q, q_at.p}; }

/// j: bicomplexes -> 4-multicomplexes; d_1 and d_2 of the image are the two
/// differentials of M, d_0 = d_3 = 0.
Multicomplex adjoint_j(const Multicomplex& m);
Morphism adjoint_j(const Morphism& f);

/// q: 4-multicomplexes -> bicomplexes, the per-bidegree quotient by the
/// submodule generated by the images of d_0 and d_3, regraded; d_0 and d_1
/// of the result are induced by d_1 and d_2.
struct QResult {
    McPtr bicomplex;
    /// Per source bidegree: the quotient presentation of L^{a,b} by the
    /// killed subspace (ambient = L^{a,b}).
    std::map<Bidegree, QuotientPresentation> quotients;
};
QResult adjoint_q(const Multicomplex& l);
Morphism adjoint_q(const Morphism& f);

/// jq(L) assembled with matching bases, so the unit is block-by-block the
/// quotient projection.
Multicomplex adjoint_jq(const QResult& q);

/// Unit L -> jq(L).
Morphism adjunction_unit(const Multicomplex& l);

/// Counit identity check: q(j(M)) equals M as a presentation.
bool counit_is_identity(const Multicomplex& m);

struct SmokeReport {
    int samples = 0;
    int surjective_checked = 0;
    int equivalence_checked = 0;
    bool ok = true;
    std::string detail;
};

/// Sampled consequences of the adjunction being Quillen for
/// (bicomplexes)_{0,0} -> (4-multicomplexes)_{1,1}: surjections map to
/// fibrations and E_{0,0}-equivalences to E_{1,1}-equivalences.
SmokeReport quillen_adjunction_smoke(int samples, std::uint64_t seed);

}  // namespace mspectra
