#pragma once

#include <mutex>

#include "mspectra/an_algebra.hpp"
#include "mspectra/multicomplex.hpp"

namespace mspectra {

/// One block of generators of a finitely generated module over the letter
/// algebra. A Free group is a single generator with no extra relation (the
/// module it spans is free). A Chain group g_0..g_{len-1}, with g_j placed at
/// base - (j,j), carries the relations
///     delta_0 g_u = sum_{j=1}^{u} (-1)^{j+1} delta_j g_{u-j}
/// (so delta_0 g_0 = 0), which is exactly the witness-cycle module shape.
struct ConeGroup {
    enum class Kind { Free, Chain };
    Kind kind;
    Bidegree base;
    int length;  // 1 for Free
    std::string prefix;
};

/// (generator index, word acting on the left); module elements are scalar
/// combinations of such terms.
using ModTerm = std::pair<int, Word>;
using ModElem = std::map<ModTerm, Scalar>;

struct GenInfo {
    int group;
    int index;  // within group
    Bidegree at;
    std::string name;
    bool chain;  // subject to the delta_0 relation
};

struct MaterializedCone {
    McPtr object;
    std::map<Bidegree, std::vector<ModTerm>> basis;
};

/// Lazily materialized module with cone-shaped support: every letter except
/// delta_0 strictly decreases the first bidegree coordinate, so each single
/// bidegree has a finite basis computable on demand.
class ConeModule {
public:
    ConeModule(int n, Field f, std::vector<ConeGroup> groups);

    /// Representing object of the witness k-cycles at (p,q): free module on
    /// x_{p,q} for k = 0, else the chain a_0..a_{k-1} based at (p,q).
    static ConeModule zw(int n, Field f, int k, Bidegree at);
    /// Representing object of the witness r-boundaries whose witness map
    /// lands in ZW_r(p,q); generators live at (p,q-1) and the two shifted
    /// chain positions.
    static ConeModule bw(int n, Field f, int r, Bidegree zw_at);
    /// Colimit truncation: a chain long enough that all bidegrees with
    /// first coordinate >= min_p are stable.
    static ConeModule zw_infinity(int n, Field f, Bidegree at, int min_p);

    int n() const { return n_; }
    const Field& field() const { return field_; }
    const std::vector<GenInfo>& generators() const { return gens_; }
    const RuleTable& rules() const { return rules_; }

    ModElem normal_form(const ModElem& x) const;
    ModElem act_word(const Word& w, const ModElem& x) const;

    const std::vector<ModTerm>& basis_at(Bidegree at) const;
    Vec coords(const ModElem& x, Bidegree at) const;
    /// Matrix of delta_i from basis_at(from) to basis_at(from + deg(d_i)).
    Matrix action(int i, Bidegree from) const;

    /// Restriction to {p >= min_p}. This is a genuine N-multicomplex (no
    /// truncation defects) because no structure map increases p.
    MaterializedCone materialize_min_p(int min_p) const;
    /// Box window for export; the result is marked truncated since boundary
    /// bidegrees lose outgoing differentials.
    MaterializedCone materialize_box(Box window) const;

private:
    int n_;
    Field field_;
    std::vector<ConeGroup> groups_;
    std::vector<GenInfo> gens_;
    RuleTable rules_;
    mutable std::mutex mu_;
    mutable std::map<Bidegree, std::vector<ModTerm>> basis_cache_;
};

/// Generator images of the representing morphism iota_r: the m-th generator
/// of ZW_r(p,q) maps to the m-th component of the witness map evaluated at
/// the universal element of BW_r.
ModElem iota_generator_image(int n, const Field& f, int r, int m);

/// iota_r: ZW_r(p,q) -> BW_r(p,q-1), materialized over {p >= min_p}.
Morphism iota_morphism(int n, Field f, int r, Bidegree at, int min_p);

/// q_r: ZW_r(0,0) -> k(0,0), a_0 to the point generator, everything else 0.
Morphism q_projection_morphism(int n, Field f, int r, int min_p);

/// pi: ZW_inf(p,q) -> k(p,q) over {p >= min_p}.
Morphism zw_infinity_projection(int n, Field f, Bidegree at, int min_p);

/// Page-stabilization bound: the basis of ZW_s(p,q) at first coordinate u is
/// independent of s once s >= p - u + 2.
int zw_stabilization_bound(Bidegree at, int u);

}  // namespace mspectra
