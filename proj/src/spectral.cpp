#include "mspectra/spectral.hpp"

namespace mspectra {

SpectralContext::SpectralContext(McPtr a) : a_(std::move(a)) {
    if (!a_) throw InternalError("spectral context on null object");
}

std::vector<int> SpectralContext::zw_component_ranks(int r, Bidegree at) const {
    std::vector<int> ranks;
    const int comps = std::max(r, 1);
    for (int i = 0; i < comps; ++i) ranks.push_back(a_->rank_at(at + Bidegree{-i, -i}));
    return ranks;
}

std::size_t SpectralContext::zw_ambient_dim(int r, Bidegree at) const {
    std::size_t d = 0;
    for (int rk : zw_component_ranks(r, at)) d += static_cast<std::size_t>(rk);
    return d;
}

const Subspace& SpectralContext::witness_cycles(int r, Bidegree at) {
    if (r < 0) throw InputError("negative page");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = zw_cache_.find({r, at});
        if (it != zw_cache_.end()) return it->second;
    }
    const Field& f = a_->field();
    const int n = a_->n();
    const std::vector<int> comps = zw_component_ranks(r, at);
    std::vector<std::size_t> offsets(comps.size() + 1, 0);
    for (std::size_t i = 0; i < comps.size(); ++i)
        offsets[i + 1] = offsets[i] + static_cast<std::size_t>(comps[i]);
    const std::size_t ambient = offsets.back();

    Subspace result(f, ambient);
    if (ambient == 0) {
        // nothing to do
    } else if (r == 0) {
        result = Subspace::full(f, ambient);
    } else {
        // conditions: for l = 0..r-1, sum_{j} (-1)^{l-j} d_{l-j} a_j = 0
        std::vector<std::size_t> row_offsets;
        std::size_t rows = 0;
        for (int l = 0; l < r; ++l) {
            row_offsets.push_back(rows);
            rows += static_cast<std::size_t>(a_->rank_at(at + Bidegree{-l, 1 - l}));
        }
        Matrix sys(f, rows, ambient);
        for (int l = 0; l < r; ++l) {
            const Bidegree target = at + Bidegree{-l, 1 - l};
            if (a_->rank_at(target) == 0) continue;
            for (int j = std::max(0, l - (n - 1)); j <= l; ++j) {
                const int i = l - j;
                const Bidegree from = at + Bidegree{-j, -j};
                if (a_->rank_at(from) == 0) continue;
                const Matrix block = a_->diff(i, from);
                const Scalar sign = i % 2 == 0 ? f.one() : f.neg(f.one());
                sys.add_block(row_offsets[static_cast<std::size_t>(l)],
                              offsets[static_cast<std::size_t>(j)], block, sign);
            }
        }
        result = kernel(sys);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return zw_cache_.emplace(std::make_pair(r, at), std::move(result)).first->second;
}

const SpectralContext::BwDomain& SpectralContext::bw_domain(int r, Bidegree at) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bw_cache_.find({r, at});
        if (it != bw_cache_.end()) return it->second;
    }
    const Field& f = a_->field();
    BwDomain d{Subspace(f, 0), {0, 0, 0}, {0, 0, 0}};
    if (r >= 1) {
        const std::size_t mid = static_cast<std::size_t>(a_->rank_at(at + Bidegree{0, -1}));
        if (r == 1) {
            d.part_dims = {0, mid, 0};
            d.part_offsets = {0, 0, mid};
            d.space = Subspace::full(f, mid);
        } else {
            const Bidegree b_at = at + Bidegree{r - 1, r - 2};
            const Bidegree c_at = at + Bidegree{-1, -1};
            const Subspace& zb = witness_cycles(r - 1, b_at);
            const Subspace& zc = witness_cycles(r - 1, c_at);
            const std::size_t db = zb.ambient_dim(), dc = zc.ambient_dim();
            d.part_dims = {db, mid, dc};
            d.part_offsets = {0, db, db + mid};
            Matrix rows(f, zb.dim() + mid + zc.dim(), db + mid + dc);
            rows.set_block(0, 0, zb.basis());
            rows.set_block(zb.dim(), db, Matrix::identity(f, mid));
            rows.set_block(zb.dim() + mid, db + mid, zc.basis());
            d.space = Subspace::span_rows(rows);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return bw_cache_.emplace(std::make_pair(r, at), std::move(d)).first->second;
}

const Matrix& SpectralContext::w_matrix(int r, Bidegree at) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = w_cache_.find({r, at});
        if (it != w_cache_.end()) return it->second;
    }
    const Field& f = a_->field();
    const int n = a_->n();
    const BwDomain& dom = bw_domain(r, at);
    const std::size_t bw_ambient = dom.part_dims[0] + dom.part_dims[1] + dom.part_dims[2];

    const std::vector<int> target_comps = zw_component_ranks(r, at);
    std::vector<std::size_t> row_off(target_comps.size() + 1, 0);
    for (std::size_t i = 0; i < target_comps.size(); ++i)
        row_off[i + 1] = row_off[i] + static_cast<std::size_t>(target_comps[i]);

    Matrix w(f, row_off.back(), bw_ambient);
    if (r >= 1) {
        const Bidegree mid_at = at + Bidegree{0, -1};
        const Bidegree b_at = at + Bidegree{r - 1, r - 2};
        const Bidegree c_at = at + Bidegree{-1, -1};
        // column offsets of the components inside the b and c parts
        auto comp_offset = [&](Bidegree base, int t) {
            std::size_t off = 0;
            for (int i = 0; i < t; ++i)
                off += static_cast<std::size_t>(a_->rank_at(base + Bidegree{-i, -i}));
            return off;
        };
        for (int m = 0; m < r; ++m) {
            // middle: d_m a
            if (a_->rank_at(mid_at) > 0 && m <= n - 1)
                w.add_block(row_off[static_cast<std::size_t>(m)], dom.part_offsets[1],
                            a_->diff(m, mid_at), f.one());
            // b part: (-1)^{m+i} d_i b_{r+m-1-i}, i = m+1..r+m-1
            if (r >= 2) {
                for (int i = m + 1; i <= r + m - 1 && i <= n - 1; ++i) {
                    const int t = r + m - 1 - i;
                    const Bidegree b_comp = b_at + Bidegree{-t, -t};
                    if (a_->rank_at(b_comp) == 0) continue;
                    const Scalar sign = (m + i) % 2 == 0 ? f.one() : f.neg(f.one());
                    w.add_block(row_off[static_cast<std::size_t>(m)],
                                dom.part_offsets[0] + comp_offset(b_at, t), a_->diff(i, b_comp),
                                sign);
                }
                // c part: + c_{m-1}
                if (m >= 1) {
                    const Bidegree c_comp = c_at + Bidegree{-(m - 1), -(m - 1)};
                    const std::size_t rk = static_cast<std::size_t>(a_->rank_at(c_comp));
                    if (rk > 0)
                        w.add_block(row_off[static_cast<std::size_t>(m)],
                                    dom.part_offsets[2] + comp_offset(c_at, m - 1),
                                    Matrix::identity(f, rk), f.one());
                }
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return w_cache_.emplace(std::make_pair(r, at), std::move(w)).first->second;
}

const Subspace& SpectralContext::boundaries(int r, Bidegree at) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bdry_cache_.find({r, at});
        if (it != bdry_cache_.end()) return it->second;
    }
    const BwDomain& dom = bw_domain(r, at);
    const Matrix& w = w_matrix(r, at);
    Subspace img = Subspace::span_rows(dom.space.basis() * w.transpose());
    std::lock_guard<std::mutex> lock(mu_);
    return bdry_cache_.emplace(std::make_pair(r, at), std::move(img)).first->second;
}

const QuotientPresentation& SpectralContext::page(int r, Bidegree at) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = page_cache_.find({r, at});
        if (it != page_cache_.end()) return it->second;
    }
    QuotientPresentation pres = quotient(witness_cycles(r, at), boundaries(r, at));
    std::lock_guard<std::mutex> lock(mu_);
    return page_cache_.emplace(std::make_pair(r, at), std::move(pres)).first->second;
}

Matrix morphism_on_zw_ambient(const Morphism& f, int r, Bidegree at) {
    const Field& fld = f.source().field();
    const int comps = std::max(r, 1);
    std::size_t rows = 0, cols = 0;
    for (int i = 0; i < comps; ++i) {
        const Bidegree b = at + Bidegree{-i, -i};
        rows += static_cast<std::size_t>(f.target().rank_at(b));
        cols += static_cast<std::size_t>(f.source().rank_at(b));
    }
    Matrix m(fld, rows, cols);
    std::size_t ro = 0, co = 0;
    for (int i = 0; i < comps; ++i) {
        const Bidegree b = at + Bidegree{-i, -i};
        const Matrix block = f.block(b);
        m.set_block(ro, co, block);
        ro += block.rows();
        co += block.cols();
    }
    return m;
}

Matrix morphism_on_bw_ambient(const Morphism& f, int r, Bidegree at) {
    const Field& fld = f.source().field();
    if (r <= 0) return Matrix(fld, 0, 0);
    if (r == 1) return f.block(at + Bidegree{0, -1});
    const Matrix fb = morphism_on_zw_ambient(f, r - 1, at + Bidegree{r - 1, r - 2});
    const Matrix fm = f.block(at + Bidegree{0, -1});
    const Matrix fc = morphism_on_zw_ambient(f, r - 1, at + Bidegree{-1, -1});
    Matrix m(fld, fb.rows() + fm.rows() + fc.rows(), fb.cols() + fm.cols() + fc.cols());
    m.set_block(0, 0, fb);
    m.set_block(fb.rows(), fb.cols(), fm);
    m.set_block(fb.rows() + fm.rows(), fb.cols() + fm.cols(), fc);
    return m;
}

Matrix induced_page_matrix(SpectralContext& src, SpectralContext& dst, const Morphism& f, int r,
                           Bidegree at) {
    const Field& fld = f.source().field();
    const QuotientPresentation& pa = src.page(r, at);
    const QuotientPresentation& pb = dst.page(r, at);
    const Matrix fz = morphism_on_zw_ambient(f, r, at);
    // well-definedness: boundaries must map into boundaries
    for (std::size_t i = 0; i < pa.boundaries().dim(); ++i) {
        if (!pb.boundaries().contains(fz.apply(pa.boundaries().basis().row(i))))
            throw InternalError("induced page map does not descend (naturality violated)");
    }
    Matrix m(fld, pb.dim(), pa.dim());
    for (std::size_t j = 0; j < pa.dim(); ++j) {
        const Vec y = fz.apply(pa.representatives().row(j));
        auto c = pb.coords(y);
        if (!c) throw InternalError("induced page map image is not a cycle");
        for (std::size_t i = 0; i < pb.dim(); ++i) m.at(i, j) = (*c)[i];
    }
    return m;
}

bool page_region_safe(const Multicomplex& a, int r, Bidegree at) {
    if (!a.truncated()) return true;
    std::optional<Box> win = a.window();
    if (!win) win = a.support_hull();
    if (!win) return true;
    // exact dependency set of the page-r presentation at (p,q)
    std::vector<Bidegree> deps;
    for (int i = 0; i < std::max(r, 1); ++i) deps.push_back(at + Bidegree{-i, -i});
    for (int l = 0; l < r; ++l) deps.push_back(at + Bidegree{-l, 1 - l});
    if (r >= 1) {
        deps.push_back(at + Bidegree{0, -1});
        if (r >= 2) {
            for (Bidegree base : {at + Bidegree{r - 1, r - 2}, at + Bidegree{-1, -1}}) {
                for (int i = 0; i <= r - 2; ++i) deps.push_back(base + Bidegree{-i, -i});
                for (int l = 0; l <= r - 2; ++l) deps.push_back(base + Bidegree{-l, 1 - l});
            }
        }
    }
    for (Bidegree d : deps)
        if (!win->contains(d)) return false;
    return true;
}

PageTable page_table(McPtr a, char side, int r, std::optional<Box> region) {
    PageTable t{side, r, {}};
    McPtr working = a;
    if (side == '2') working = std::make_shared<const Multicomplex>(involve(*a));
    SpectralContext ctx(working);
    std::optional<Box> hull = working->support_hull();
    if (!hull) return t;
    const Box sweep = hull->inflated(r + 1);
    const int n = a->n();
    for (Bidegree x : sweep.points()) {
        const Bidegree label = side == '2' ? involution_bidegree(n, x) : x;
        if (region && !region->contains(label)) continue;
        if (working->truncated() && !page_region_safe(*working, r, x)) continue;
        if (ctx.zw_ambient_dim(r, x) == 0) continue;
        const std::size_t d = ctx.page_dim(r, x);
        if (d > 0) t.dims[label] = static_cast<int>(d);
    }
    return t;
}

std::map<Bidegree, int> page_two_via_page_one(McPtr a) {
    SpectralContext ctx(a);
    std::map<Bidegree, int> out;
    std::optional<Box> hull = a->support_hull();
    if (!hull) return out;
    const Box sweep = hull->inflated(2);
    const Field& f = a->field();
    // induced d_1 on E_1, then its homology
    std::map<Bidegree, Matrix> d1;
    for (Bidegree x : sweep.points()) {
        const QuotientPresentation& p1 = ctx.page(1, x);
        const Bidegree to = x + diff_degree(1);
        const QuotientPresentation& t1 = ctx.page(1, to);
        Matrix m(f, t1.dim(), p1.dim());
        for (std::size_t j = 0; j < p1.dim(); ++j) {
            const Vec y = a->diff(1, x).apply(p1.representatives().row(j));
            auto c = t1.coords(y);
            if (!c) throw InternalError("d_1 does not descend to page one");
            for (std::size_t i = 0; i < t1.dim(); ++i) m.at(i, j) = (*c)[i];
        }
        d1.emplace(x, std::move(m));
    }
    for (Bidegree x : sweep.points()) {
        auto out_it = d1.find(x);
        if (out_it == d1.end()) continue;
        const Matrix& leaving = out_it->second;
        const Bidegree from = x - diff_degree(1);
        Subspace img = d1.count(from) ? image(d1.at(from))
                                      : Subspace(f, leaving.cols());
        Subspace ker = kernel(leaving);
        const QuotientPresentation q = quotient(ker, img);
        if (q.dim() > 0) out[x] = static_cast<int>(q.dim());
    }
    return out;
}

ClassicalOracle::ClassicalOracle(McPtr a) : a_(std::move(a)) {
    const Field& f = a_->field();
    const int n_letters = a_->n();
    for (auto& [at, rk] : a_->support()) {
        (void)rk;
        Layer& l = layers_[at.q - at.p];
        l.components.push_back(at);
    }
    for (auto& [deg, l] : layers_) {
        (void)deg;
        std::sort(l.components.begin(), l.components.end());  // ascending p
        l.offsets.assign(l.components.size() + 1, 0);
        for (std::size_t i = 0; i < l.components.size(); ++i)
            l.offsets[i + 1] =
                l.offsets[i] + static_cast<std::size_t>(a_->rank_at(l.components[i]));
        l.dim = l.offsets.back();
    }
    for (auto& [deg, l] : layers_) {
        const Layer* next = layer(deg + 1);
        const std::size_t rows = next ? next->dim : 0;
        Matrix d(f, rows, l.dim);
        if (next) {
            for (std::size_t ci = 0; ci < l.components.size(); ++ci) {
                const Bidegree from = l.components[ci];
                for (int i = 0; i < n_letters; ++i) {
                    const Bidegree to = from + diff_degree(i);
                    const auto it =
                        std::lower_bound(next->components.begin(), next->components.end(), to);
                    if (it == next->components.end() || *it != to) continue;
                    const std::size_t ti = static_cast<std::size_t>(it - next->components.begin());
                    // sign (-1)^{i*deg}
                    const bool flip = (i % 2 == 1) && (deg % 2 != 0);
                    const Matrix block = a_->diff(i, from);
                    d.add_block(next->offsets[ti], l.offsets[ci], block,
                                flip ? f.neg(f.one()) : f.one());
                }
            }
        }
        d_.emplace(deg, std::move(d));
    }
    // D^2 = 0 gate
    for (auto& [deg, d] : d_) {
        auto it = d_.find(deg + 1);
        if (it == d_.end()) continue;
        if (!(it->second * d).is_zero())
            throw InternalError("total differential does not square to zero (sign convention bug)");
    }
}

const ClassicalOracle::Layer* ClassicalOracle::layer(int n) const {
    auto it = layers_.find(n);
    return it == layers_.end() ? nullptr : &it->second;
}

std::size_t ClassicalOracle::filtration_dim(const Layer& l, int p) const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < l.components.size(); ++i)
        if (l.components[i].p <= p) d = l.offsets[i + 1];
    return d;
}

Subspace ClassicalOracle::z_space(int r, int p, int n) {
    const auto key = std::make_tuple(r, p, n);
    auto cached = z_cache_.find(key);
    if (cached != z_cache_.end()) return cached->second;
    const Field& f = a_->field();
    const Layer* l = layer(n);
    if (!l || l->dim == 0) {
        Subspace s(f, l ? l->dim : 0);
        z_cache_.emplace(key, s);
        return s;
    }
    const std::size_t fp = filtration_dim(*l, p);
    // rows of D^n whose target component has p' > p - r
    const Matrix& d = d_.at(n);
    const Layer* next = layer(n + 1);
    std::size_t row_start = next ? filtration_dim(*next, p - r) : 0;
    const std::size_t rows = next ? next->dim - row_start : 0;
    Matrix sys(f, rows, fp);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < fp; ++j) sys.at(i, j) = d.at(row_start + i, j);
    Subspace k_small = kernel(sys);
    // embed into full layer coordinates
    std::vector<Vec> rows_full;
    for (std::size_t i = 0; i < k_small.dim(); ++i) {
        Vec v(l->dim, f.zero());
        for (std::size_t j = 0; j < fp; ++j) v[j] = k_small.basis().at(i, j);
        rows_full.push_back(std::move(v));
    }
    Subspace s = Subspace::span(f, l->dim, rows_full);
    z_cache_.emplace(key, s);
    return s;
}

std::map<Bidegree, int> ClassicalOracle::page_dims(int r) {
    std::map<Bidegree, int> out;
    const Field& f = a_->field();
    for (auto& [n, l] : layers_) {
        if (l.dim == 0) continue;
        int pmin = l.components.front().p, pmax = l.components.back().p;
        for (int p = pmin; p <= pmax + r; ++p) {
            std::size_t dim;
            if (r == 0) {
                dim = filtration_dim(l, p) - filtration_dim(l, p - 1);
            } else {
                Subspace z = z_space(r, p, n);
                Subspace z_prev = z_space(r - 1, p - 1, n);
                // D(Z_{r-1}^{p+r-1, n-1})
                Subspace denom = z_prev;
                const Layer* below = layer(n - 1);
                if (below && below->dim > 0) {
                    Subspace zin = z_space(r - 1, p + r - 1, n - 1);
                    const Matrix& d = d_.at(n - 1);
                    std::vector<Vec> imgs;
                    for (std::size_t i = 0; i < zin.dim(); ++i)
                        imgs.push_back(d.apply(zin.basis().row(i)));
                    denom = denom + Subspace::span(f, l.dim, imgs);
                }
                const QuotientPresentation q = quotient(z, denom);
                dim = q.dim();
            }
            if (dim > 0) out[Bidegree{p, n + p}] = static_cast<int>(dim);
        }
    }
    return out;
}

}  // namespace mspectra
