#include "mspectra/random_gen.hpp"

#include "mspectra/cone_module.hpp"

namespace mspectra {

Scalar random_scalar(Rng& rng, const Field& f, bool allow_zero) {
    if (f.is_rationals()) {
        const int lo = allow_zero ? -2 : 1;
        long long num = rng.range(lo, 2);
        if (!allow_zero && num == 0) num = 1;
        const long long den = rng.range(1, 3);
        return f.div(f.from_int(num), f.from_int(den));
    }
    const std::uint64_t p = f.p();
    const std::uint64_t v = allow_zero ? rng.below(p) : 1 + rng.below(p - 1);
    return f.from_int(static_cast<long long>(v));
}

Matrix random_matrix(Rng& rng, const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng.chance(2, 3)) m.at(i, j) = random_scalar(rng, f);
    return m;
}

Matrix random_invertible(Rng& rng, const Field& f, std::size_t n) {
    // unit lower x unit upper, then a row permutation
    Matrix l = Matrix::identity(f, n);
    Matrix u = Matrix::identity(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (rng.chance(1, 2)) l.at(i, j) = random_scalar(rng, f);
            if (rng.chance(1, 2)) u.at(j, i) = random_scalar(rng, f);
        }
    Matrix g = l * u;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        if (j != i - 1)
            for (std::size_t c = 0; c < n; ++c) std::swap(g.at(i - 1, c), g.at(j, c));
    }
    return g;
}

Multicomplex translate(const Multicomplex& a, Bidegree by) {
    Multicomplex out(a.n(), a.field());
    for (auto& [at, rk] : a.support()) out.set_rank(at + by, rk);
    for (auto& [key, block] : a.diff_blocks()) out.set_diff(key.first, key.second + by, block);
    return out;
}

Morphism random_conjugation(Rng& rng, McPtr a) {
    const Field& f = a->field();
    std::map<Bidegree, Matrix> g, g_inv;
    for (auto& [at, rk] : a->support()) {
        Matrix m = random_invertible(rng, f, static_cast<std::size_t>(rk));
        g_inv.emplace(at, inverse(m));
        g.emplace(at, std::move(m));
    }
    auto conj = std::make_shared<Multicomplex>(a->n(), f);
    for (auto& [at, rk] : a->support()) conj->set_rank(at, rk);
    for (auto& [key, block] : a->diff_blocks()) {
        const auto& [i, from] = key;
        const Bidegree to = from + diff_degree(i);
        conj->set_diff(i, from, g.at(to) * block * g_inv.at(from));
    }
    Morphism iso(a, std::move(conj));
    for (auto& [at, m] : g) iso.set_block(at, m);
    return iso;
}

namespace {

Multicomplex random_piece(Rng& rng, int n, const Field& f, const Box& box) {
    const int kind = rng.range(0, 9);
    const Bidegree spot{rng.range(box.pmin, box.pmax), rng.range(box.qmin, box.qmax)};
    if (kind <= 2) return point_module(n, f, spot);
    if (kind <= 6) {
        // single d_m arrow, kept inside the box
        std::vector<int> fits;
        for (int m = 0; m < n; ++m)
            if (box.contains(spot + diff_degree(m))) fits.push_back(m);
        if (fits.empty()) return point_module(n, f, spot);
        const int m = fits[rng.below(fits.size())];
        Multicomplex piece(n, f);
        piece.set_rank(spot, 1);
        piece.set_rank(spot + diff_degree(m), piece.rank_at(spot + diff_degree(m)) + 1);
        Matrix d(f, 1, 1);
        d.at(0, 0) = random_scalar(rng, f, false);
        piece.set_diff(m, spot, d);
        return piece;
    }
    // small witness-cone window, translated into the box
    const int k = rng.range(1, 2);
    const int depth = rng.range(1, 2);
    const ConeModule zw = ConeModule::zw(n, f, k, Bidegree{0, 0});
    const MaterializedCone mat = zw.materialize_min_p(-depth);
    Multicomplex piece = *mat.object;
    const auto hull = piece.support_hull();
    if (!hull) return point_module(n, f, spot);
    const int w = hull->pmax - hull->pmin, h = hull->qmax - hull->qmin;
    if (w > box.pmax - box.pmin || h > box.qmax - box.qmin) return point_module(n, f, spot);
    const Bidegree shift{rng.range(box.pmin - hull->pmin, box.pmax - hull->pmax),
                         rng.range(box.qmin - hull->qmin, box.qmax - hull->qmax)};
    return translate(piece, shift);
}

}  // namespace

Multicomplex random_multicomplex(Rng& rng, int n, Field f, Box support_box, int max_rank,
                                 int pieces) {
    Multicomplex acc(n, f);
    const int count = rng.range(1, pieces);
    for (int i = 0; i < count; ++i) {
        Multicomplex piece = random_piece(rng, n, f, support_box);
        // respect the rank cap
        bool fits = true;
        for (auto& [at, rk] : piece.support())
            if (acc.rank_at(at) + rk > max_rank) fits = false;
        if (!fits) continue;
        acc = direct_sum(acc, piece);
    }
    auto base = std::make_shared<const Multicomplex>(std::move(acc));
    if (base->support().empty()) return *base;
    return random_conjugation(rng, base).target();
}

namespace {

McPtr share(Multicomplex m) { return std::make_shared<const Multicomplex>(std::move(m)); }

Morphism conjugated_ends(Rng& rng, const Morphism& f) {
    // pre- and post-compose with random isos
    Morphism pre = random_conjugation(rng, f.source_ptr());
    Morphism post = random_conjugation(rng, f.target_ptr());
    // f o pre^{-1}: express via blocks directly
    Morphism out(pre.target_ptr(), post.target_ptr());
    for (auto& [at, rk] : f.source().support()) {
        (void)rk;
        const Matrix block = post.block(at) * f.block(at) * inverse(pre.block(at));
        out.set_block(at, block);
    }
    return out;
}

Morphism basic_morphism(Rng& rng, int n, const Field& f, const Box& box) {
    const int kind = rng.range(0, 9);
    if (kind <= 1) {
        McPtr a = share(random_multicomplex(rng, n, f, box));
        return random_conjugation(rng, a);  // iso
    }
    if (kind <= 3) {
        McPtr a = share(random_multicomplex(rng, n, f, box, 2, 2));
        McPtr b = share(random_multicomplex(rng, n, f, box, 2, 2));
        return make_direct_sum(a, b).project_left;
    }
    if (kind == 4) {
        McPtr a = share(random_multicomplex(rng, n, f, box, 2, 2));
        McPtr b = share(random_multicomplex(rng, n, f, box, 2, 2));
        return make_direct_sum(a, b).include_left;
    }
    if (kind == 5) {
        McPtr a = share(random_multicomplex(rng, n, f, box, 2, 2));
        McPtr b = share(random_multicomplex(rng, n, f, box, 2, 2));
        return zero_morphism(a, b);
    }
    if (kind <= 7) {
        // projection of a small witness cone onto its top class
        const int k = rng.range(1, 3);
        Morphism q = q_projection_morphism(n, f, k, -rng.range(1, 2));
        const auto hull = q.source().support_hull();
        if (hull && hull->pmax - hull->pmin <= box.pmax - box.pmin &&
            hull->qmax - hull->qmin <= box.qmax - box.qmin)
            return q;
        McPtr a = share(random_multicomplex(rng, n, f, box));
        return identity_morphism(a);
    }
    // hom-space sample between small random objects
    McPtr a = share(random_multicomplex(rng, n, f, box, 2, 2));
    McPtr b = share(random_multicomplex(rng, n, f, box, 2, 2));
    std::vector<Morphism> basis = hom_space(a, b);
    Morphism out = zero_morphism(a, b);
    for (const Morphism& h : basis) {
        if (!rng.chance(1, 2)) continue;
        const Scalar c = random_scalar(rng, f, false);
        for (auto& [at, block] : h.blocks()) {
            Matrix acc = out.block(at);
            acc.add_block(0, 0, block, c);
            out.set_block(at, acc);
        }
    }
    return out;
}

}  // namespace

Morphism random_strict_morphism(Rng& rng, int n, Field f, Box support_box) {
    Morphism first = basic_morphism(rng, n, f, support_box);
    if (rng.chance(1, 2)) {
        Morphism second = basic_morphism(rng, n, f, support_box);
        return conjugated_ends(rng, direct_sum(first, second));
    }
    return conjugated_ends(rng, first);
}

std::pair<Morphism, Morphism> random_composable_pair(Rng& rng, int n, Field f, Box support_box) {
    // f: A -> B, g: B -> C with B shared
    Morphism f1 = random_strict_morphism(rng, n, f, support_box);
    McPtr b = f1.target_ptr();
    // g options: iso from B, projection B -> summand of B?, hom-sample B -> random
    const int kind = rng.range(0, 2);
    if (kind == 0) return {random_conjugation(rng, b), f1};
    McPtr c = share(random_multicomplex(rng, n, f, support_box, 2, 2));
    std::vector<Morphism> basis = hom_space(b, c);
    Morphism g = zero_morphism(b, c);
    for (const Morphism& h : basis) {
        if (!rng.chance(1, 2)) continue;
        const Scalar s = random_scalar(rng, f, false);
        for (auto& [at, block] : h.blocks()) {
            Matrix acc = g.block(at);
            acc.add_block(0, 0, block, s);
            g.set_block(at, acc);
        }
    }
    return {g, f1};
}

}  // namespace mspectra
