#include "mspectra/model.hpp"

#include <algorithm>

namespace mspectra {

std::string GeneratingMap::to_string() const {
    std::string s = side == '2' ? "''" : "'";
    s += kind == Kind::J ? "J" : "I";
    s += "[" + std::to_string(index) + "](" + at.to_string() + ")";
    return s;
}

namespace {

void append_first_side_family(std::vector<GeneratingMap>& out, bool trivial, int r, char side,
                              const Box& window) {
    for (Bidegree b : window.points()) {
        if (trivial) {
            for (int k = 0; k <= r; ++k)
                out.push_back(GeneratingMap{GeneratingMap::Kind::J, side, k, b});
        } else {
            for (int k = 1; k <= r - 1; ++k)
                out.push_back(GeneratingMap{GeneratingMap::Kind::J, side, k, b});
            out.push_back(GeneratingMap{GeneratingMap::Kind::I, side, r + 1, b});
        }
    }
}

}  // namespace

std::vector<GeneratingMap> generating_cofibrations(int r, int s, const Box& window) {
    std::vector<GeneratingMap> out;
    append_first_side_family(out, false, r, '1', window);
    append_first_side_family(out, false, s, '2', window);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GeneratingMap> generating_trivial_cofibrations(int r, int s, const Box& window) {
    std::vector<GeneratingMap> out;
    append_first_side_family(out, true, r, '1', window);
    append_first_side_family(out, true, s, '2', window);
    std::sort(out.begin(), out.end());
    return out;
}

MorphismAnalyzer::MorphismAnalyzer(Morphism f)
    : f_(f),
      f_inv_(involve(f)),
      ca_(f.source_ptr()),
      cb_(f.target_ptr()),
      ca_inv_(f_inv_.source_ptr()),
      cb_inv_(f_inv_.target_ptr()) {}

Matrix MorphismAnalyzer::induced(char side, int r, Bidegree at) {
    if (side == '2') {
        const Bidegree x = involution_bidegree(f_.source().n(), at);
        return induced_page_matrix(ca_inv_, cb_inv_, f_inv_, r, x);
    }
    return induced_page_matrix(ca_, cb_, f_, r, at);
}

VerdictPart MorphismAnalyzer::page_check(int first_max, int second_max, bool require_iso,
                                         int first_min, int second_min,
                                         std::optional<Box> region) {
    VerdictPart v;
    const int n = f_.source().n();
    for (char side : {'1', '2'}) {
        const int lo = side == '1' ? first_min : second_min;
        const int hi = side == '1' ? first_max : second_max;
        if (hi < lo) continue;
        const Morphism& f = side == '2' ? f_inv_ : f_;
        SpectralContext& src = source_context(side);
        SpectralContext& dst = target_context(side);
        Box hull;
        if (auto h = f.source().support_hull()) hull.absorb(*h);
        if (auto h = f.target().support_hull()) hull.absorb(*h);
        if (hull.empty()) continue;
        for (int page = lo; page <= hi; ++page) {
            for (Bidegree x : hull.inflated(page + 2).points()) {
                const Bidegree label = side == '2' ? involution_bidegree(n, x) : x;
                if (region && !region->contains(label)) continue;
                const std::size_t da = src.zw_ambient_dim(page, x);
                const std::size_t db = dst.zw_ambient_dim(page, x);
                if (da == 0 && db == 0) continue;
                const std::size_t dim_a = da == 0 ? 0 : src.page_dim(page, x);
                const std::size_t dim_b = db == 0 ? 0 : dst.page_dim(page, x);
                if (dim_a == 0 && dim_b == 0) continue;
                if (require_iso && dim_a != dim_b) {
                    v.ok = false;
                    v.certificates.push_back(
                        Certificate{side, page, label,
                                    "dimension " + std::to_string(dim_a) + " vs " +
                                        std::to_string(dim_b)});
                    continue;
                }
                if (dim_b == 0) continue;  // surjective onto zero
                const Matrix m = induced_page_matrix(src, dst, f, page, x);
                const std::size_t rk = rank(m);
                if (require_iso ? rk != dim_a : rk != dim_b) {
                    v.ok = false;
                    v.certificates.push_back(Certificate{
                        side, page, label, require_iso ? "not an isomorphism" : "not surjective"});
                }
            }
        }
    }
    return v;
}

VerdictPart MorphismAnalyzer::weak_equivalence(int r, int s, std::optional<Box> region) {
    return page_check(r + 1, s + 1, true, r + 1, s + 1, region);
}

VerdictPart MorphismAnalyzer::side_equivalence(char side, int r, std::optional<Box> region) {
    if (side == '2') return page_check(-1, r + 1, true, 0, r + 1, region);
    return page_check(r + 1, -1, true, r + 1, 0, region);
}

VerdictPart MorphismAnalyzer::fibration(int r, int s, std::optional<Box> region) {
    return page_check(r, s, false, 0, 0, region);
}

ClassVerdict MorphismAnalyzer::classify(int r, int s, std::optional<Box> region) {
    return ClassVerdict{weak_equivalence(r, s, region), fibration(r, s, region)};
}

Box MorphismAnalyzer::rlp_window(char side, int max_index) const {
    const Morphism& f = side == '2' ? f_inv_ : f_;
    Box hull;
    if (auto h = f.source().support_hull()) hull.absorb(*h);
    if (auto h = f.target().support_hull()) hull.absorb(*h);
    if (hull.empty()) return hull;
    return hull.inflated(max_index + 2);
}

bool MorphismAnalyzer::has_rlp(const GeneratingMap& g) {
    // The involution carries squares and lifts across sides, so testing a
    // side-2 map against f is testing the side-1 map against f^inv.
    const bool second = g.side == '2';
    SpectralContext& ca = second ? ca_inv_ : ca_;
    SpectralContext& cb = second ? cb_inv_ : cb_;
    const Morphism& f = second ? f_inv_ : f_;
    const Field& fld = f.source().field();

    if (g.kind == GeneratingMap::Kind::J) {
        // lifts of 0 -> ZW_k against f exist iff ZW_k^{p,q}(f) is onto
        const Subspace& zb = cb.witness_cycles(g.index, g.at);
        if (zb.dim() == 0) return true;
        const Subspace& za = ca.witness_cycles(g.index, g.at);
        if (za.dim() == 0) return false;
        const Matrix fz = morphism_on_zw_ambient(f, g.index, g.at);
        return rank(za.basis() * fz.transpose()) == zb.dim();
    }

    const int rho = g.index;
    const Subspace& za = ca.witness_cycles(rho, g.at);
    const SpectralContext::BwDomain& ba = ca.bw_domain(rho, g.at);
    const SpectralContext::BwDomain& bb = cb.bw_domain(rho, g.at);
    if (za.dim() == 0 && bb.space.dim() == 0) return true;  // no squares

    const Matrix fz = morphism_on_zw_ambient(f, rho, g.at);
    const Matrix& wb = cb.w_matrix(rho, g.at);

    // Commuting squares: pairs (u, v) with f(u) = w_r(v), in coordinates of
    // the witness bases of source cycles and target boundaries.
    const std::size_t du = za.dim(), dv = bb.space.dim();
    Matrix m(fld, fz.rows(), du + dv);
    {
        const Matrix left = fz * za.basis().transpose();          // zwambB x du
        const Matrix right = wb * bb.space.basis().transpose();   // zwambB x dv
        m.set_block(0, 0, left);
        m.add_block(0, du, right, fld.neg(fld.one()));
    }
    const Subspace squares = kernel(m);
    if (squares.dim() == 0) return true;

    // Lifts h parameterized by the source boundary space: the square a lift
    // solves is (w_r(h), f(h)).
    const Matrix& wa = ca.w_matrix(rho, g.at);
    const Matrix fb = morphism_on_bw_ambient(f, rho, g.at);
    const std::size_t dh = ba.space.dim();
    Matrix lifts(fld, du + dv, dh);
    for (std::size_t j = 0; j < dh; ++j) {
        const Vec h = ba.space.basis().row(j);
        const auto u = za.coords(wa.apply(h));
        if (!u) throw InternalError("witness map image escaped the witness cycles");
        const auto v = bb.space.coords(fb.apply(h));
        if (!v) throw InternalError("morphism image escaped the witness boundaries");
        for (std::size_t i = 0; i < du; ++i) lifts.at(i, j) = (*u)[i];
        for (std::size_t i = 0; i < dv; ++i) lifts.at(du + i, j) = (*v)[i];
    }

    // RLP <=> every square is hit: span(squares) inside column span(lifts)
    Matrix joint(fld, du + dv, dh + squares.dim());
    joint.set_block(0, 0, lifts);
    joint.set_block(0, dh, squares.basis().transpose());
    return rank(joint) == rank(lifts);
}

MorphismAnalyzer::RlpSweep MorphismAnalyzer::rlp_sweep(const std::vector<GeneratingMap>& maps) {
    RlpSweep sweep;
    for (const GeneratingMap& g : maps) {
        ++sweep.checked;
        if (!has_rlp(g)) {
            sweep.ok = false;
            sweep.failed = g;
            return sweep;
        }
    }
    return sweep;
}

MorphismAnalyzer::RlpSweep MorphismAnalyzer::rlp_against_generating_cofibrations(int r, int s) {
    std::vector<GeneratingMap> maps;
    append_first_side_family(maps, false, r, '1', rlp_window('1', r + 1));
    append_first_side_family(maps, false, s, '2', rlp_window('2', s + 1));
    std::sort(maps.begin(), maps.end());
    return rlp_sweep(maps);
}

MorphismAnalyzer::RlpSweep MorphismAnalyzer::rlp_against_generating_trivial_cofibrations(int r,
                                                                                         int s) {
    std::vector<GeneratingMap> maps;
    append_first_side_family(maps, true, r, '1', rlp_window('1', r));
    append_first_side_family(maps, true, s, '2', rlp_window('2', s));
    std::sort(maps.begin(), maps.end());
    return rlp_sweep(maps);
}

MorphismAnalyzer::Crosscheck MorphismAnalyzer::acyclic_fibration_crosscheck(int r, int s) {
    Crosscheck c{false, false, false, rlp_against_generating_cofibrations(r, s), classify(r, s)};
    c.rlp_route = c.sweep.ok;
    c.class_route = c.verdict.weak_equivalence.ok && c.verdict.fibration.ok;
    c.agree = c.rlp_route == c.class_route;
    return c;
}

MorphismAnalyzer::Crosscheck MorphismAnalyzer::fibration_crosscheck(int r, int s) {
    Crosscheck c{false, false, false, rlp_against_generating_trivial_cofibrations(r, s),
                 classify(r, s)};
    c.rlp_route = c.sweep.ok;
    c.class_route = c.verdict.fibration.ok;
    c.agree = c.rlp_route == c.class_route;
    return c;
}

}  // namespace mspectra
