#include "mspectra/multicomplex.hpp"

namespace mspectra {

void Multicomplex::set_rank(Bidegree at, int rank) {
    if (rank < 0) throw InputError("negative rank");
    if (rank == 0)
        support_.erase(at);
    else
        support_[at] = rank;
}

int Multicomplex::rank_at(Bidegree at) const {
    auto it = support_.find(at);
    return it == support_.end() ? 0 : it->second;
}

std::size_t Multicomplex::total_dim() const {
    std::size_t t = 0;
    for (auto& [b, r] : support_) t += static_cast<std::size_t>(r);
    return t;
}

Matrix Multicomplex::diff(int i, Bidegree from) const {
    auto it = diffs_.find({i, from});
    if (it != diffs_.end()) return it->second;
    const Bidegree to = from + diff_degree(i);
    return Matrix::zero(field_, static_cast<std::size_t>(rank_at(to)),
                        static_cast<std::size_t>(rank_at(from)));
}

bool Multicomplex::has_diff(int i, Bidegree from) const { return diffs_.count({i, from}) > 0; }

void Multicomplex::set_diff(int i, Bidegree from, const Matrix& block) {
    if (i < 0 || i >= n_)
        throw InputError("structure map index " + std::to_string(i) + " out of range for N=" +
                         std::to_string(n_));
    if (block.field() != field_) throw InputError("diff block over wrong field");
    const Bidegree to = from + diff_degree(i);
    if (block.rows() != static_cast<std::size_t>(rank_at(to)) ||
        block.cols() != static_cast<std::size_t>(rank_at(from)))
        throw InputError("diff block shape mismatch at d_" + std::to_string(i) + " from (" +
                         from.to_string() + ")");
    if (block.is_zero())
        diffs_.erase({i, from});
    else
        diffs_.insert_or_assign({i, from}, block);
}

std::vector<RelationViolation> Multicomplex::validate() const {
    std::vector<RelationViolation> out;
    std::optional<Box> win = window_;
    if (truncated_ && !win) win = support_hull();
    for (auto& [at, rk] : support_) {
        (void)rk;
        for (int l = 0; l <= 2 * (n_ - 1); ++l) {
            const Bidegree to = at + Bidegree{-l, 2 - l};
            const int target_rank = rank_at(to);
            if (target_rank == 0) continue;
            if (truncated_ && win) {
                bool interior = win->contains(at) && win->contains(to);
                for (int j = std::max(0, l - (n_ - 1)); j <= std::min(l, n_ - 1) && interior; ++j)
                    interior = win->contains(at + diff_degree(j));
                if (!interior) continue;
            }
            Matrix acc = Matrix::zero(field_, static_cast<std::size_t>(target_rank),
                                      static_cast<std::size_t>(rank_at(at)));
            bool any = false;
            for (int i = std::max(0, l - (n_ - 1)); i <= std::min(l, n_ - 1); ++i) {
                const int j = l - i;
                const Bidegree mid = at + diff_degree(j);
                if (rank_at(mid) == 0) continue;
                if (!has_diff(j, at) && !has_diff(i, mid)) continue;
                Matrix term = diff(i, mid) * diff(j, at);
                const Scalar sign = i % 2 == 0 ? field_.one() : field_.neg(field_.one());
                acc.add_block(0, 0, term, sign);
                any = true;
            }
            if (any && !acc.is_zero()) out.push_back(RelationViolation{l, at, std::move(acc)});
        }
    }
    return out;
}

std::optional<Box> Multicomplex::support_hull() const {
    Box b;
    for (auto& [at, rk] : support_) {
        (void)rk;
        b.absorb(at);
    }
    if (b.empty()) return std::nullopt;
    return b;
}

Multicomplex involve(const Multicomplex& a) {
    const int n = a.n();
    Multicomplex out(n, a.field());
    for (auto& [at, rk] : a.support()) out.set_rank(involution_bidegree(n, at), rk);
    for (auto& [key, block] : a.diff_blocks()) {
        const auto& [j, from] = key;
        out.set_diff(n - 1 - j, involution_bidegree(n, from), block);
    }
    out.set_truncated(a.truncated(), std::nullopt);
    return out;
}

Multicomplex direct_sum(const Multicomplex& a, const Multicomplex& b) {
    if (a.n() != b.n()) throw InputError("direct sum: N mismatch");
    if (a.field() != b.field()) throw InputError("direct sum: field mismatch");
    Multicomplex out(a.n(), a.field());
    for (auto& [at, rk] : a.support()) out.set_rank(at, rk);
    for (auto& [at, rk] : b.support()) out.set_rank(at, out.rank_at(at) + rk);
    for (int i = 0; i < a.n(); ++i) {
        for (auto& [at, rk] : out.support()) {
            (void)rk;
            const Matrix da = a.diff(i, at);
            const Matrix db = b.diff(i, at);
            if (da.is_zero() && db.is_zero()) continue;
            const Bidegree to = at + diff_degree(i);
            Matrix block = Matrix::zero(out.field(), static_cast<std::size_t>(out.rank_at(to)),
                                        static_cast<std::size_t>(out.rank_at(at)));
            block.set_block(0, 0, da);
            block.set_block(da.rows(), da.cols(), db);
            out.set_diff(i, at, block);
        }
    }
    out.set_truncated(a.truncated() || b.truncated(), std::nullopt);
    return out;
}

Multicomplex zero_multicomplex(int n, Field f) { return Multicomplex(n, f); }

Multicomplex point_module(int n, Field f, Bidegree at) {
    Multicomplex m(n, f);
    m.set_rank(at, 1);
    return m;
}

Morphism::Morphism(McPtr source, McPtr target) : source_(std::move(source)), target_(std::move(target)) {
    if (!source_ || !target_) throw InternalError("morphism endpoints must be non-null");
    if (source_->n() != target_->n()) throw InputError("morphism: N mismatch");
    if (source_->field() != target_->field()) throw InputError("morphism: field mismatch");
}

Matrix Morphism::block(Bidegree at) const {
    auto it = blocks_.find(at);
    if (it != blocks_.end()) return it->second;
    return Matrix::zero(source_->field(), static_cast<std::size_t>(target_->rank_at(at)),
                        static_cast<std::size_t>(source_->rank_at(at)));
}

void Morphism::set_block(Bidegree at, const Matrix& m) {
    if (m.rows() != static_cast<std::size_t>(target_->rank_at(at)) ||
        m.cols() != static_cast<std::size_t>(source_->rank_at(at)))
        throw InputError("morphism block shape mismatch at (" + at.to_string() + ")");
    if (m.is_zero())
        blocks_.erase(at);
    else
        blocks_.insert_or_assign(at, m);
}

std::vector<StrictnessViolation> Morphism::validate() const {
    std::vector<StrictnessViolation> out;
    const int n = source_->n();
    for (auto& [at, rk] : source_->support()) {
        (void)rk;
        for (int i = 0; i < n; ++i) {
            const Bidegree to = at + diff_degree(i);
            if (target_->rank_at(to) == 0) continue;  // both sides are zero maps
            Matrix lhs = block(to) * source_->diff(i, at);
            Matrix rhs = target_->diff(i, at) * block(at);
            if (lhs != rhs) out.push_back(StrictnessViolation{i, at, lhs - rhs});
        }
    }
    return out;
}

bool Morphism::is_surjective_at(Bidegree at) const {
    return rank(block(at)) == static_cast<std::size_t>(target_->rank_at(at));
}

bool Morphism::is_injective_at(Bidegree at) const {
    return rank(block(at)) == static_cast<std::size_t>(source_->rank_at(at));
}

Morphism identity_morphism(McPtr a) {
    Morphism f(a, a);
    for (auto& [at, rk] : a->support()) f.set_block(at, Matrix::identity(a->field(), static_cast<std::size_t>(rk)));
    return f;
}

Morphism zero_morphism(McPtr source, McPtr target) { return Morphism(std::move(source), std::move(target)); }

Morphism compose(const Morphism& g, const Morphism& f) {
    if (&f.target() != &g.source() && f.target() != g.source())
        throw InputError("compose: middle objects differ");
    Morphism h(f.source_ptr(), g.target_ptr());
    for (auto& [at, rk] : f.source().support()) {
        (void)rk;
        h.set_block(at, g.block(at) * f.block(at));
    }
    return h;
}

Morphism involve(const Morphism& f) {
    auto src = std::make_shared<const Multicomplex>(involve(f.source()));
    auto dst = std::make_shared<const Multicomplex>(involve(f.target()));
    const int n = f.source().n();
    Morphism out(src, dst);
    for (auto& [at, m] : f.blocks()) out.set_block(involution_bidegree(n, at), m);
    return out;
}

DirectSum make_direct_sum(McPtr a, McPtr b) {
    auto sum = std::make_shared<const Multicomplex>(direct_sum(*a, *b));
    const Field& f = a->field();
    Morphism inc_a(a, sum), inc_b(b, sum), pr_a(sum, a), pr_b(sum, b);
    for (auto& [at, rk] : sum->support()) {
        const std::size_t ra = static_cast<std::size_t>(a->rank_at(at));
        const std::size_t rb = static_cast<std::size_t>(b->rank_at(at));
        (void)rk;
        if (ra > 0) {
            Matrix ia = Matrix::zero(f, ra + rb, ra);
            ia.set_block(0, 0, Matrix::identity(f, ra));
            inc_a.set_block(at, ia);
            pr_a.set_block(at, ia.transpose());
        }
        if (rb > 0) {
            Matrix ib = Matrix::zero(f, ra + rb, rb);
            ib.set_block(ra, 0, Matrix::identity(f, rb));
            inc_b.set_block(at, ib);
            pr_b.set_block(at, ib.transpose());
        }
    }
    return DirectSum{sum, std::move(inc_a), std::move(inc_b), std::move(pr_a), std::move(pr_b)};
}

Morphism direct_sum(const Morphism& f, const Morphism& g) {
    auto src = std::make_shared<const Multicomplex>(direct_sum(f.source(), g.source()));
    auto dst = std::make_shared<const Multicomplex>(direct_sum(f.target(), g.target()));
    const Field& fld = f.source().field();
    Morphism h(src, dst);
    for (auto& [at, rk] : src->support()) {
        (void)rk;
        const Matrix bf = f.block(at);
        const Matrix bg = g.block(at);
        Matrix block = Matrix::zero(fld, bf.rows() + bg.rows(), bf.cols() + bg.cols());
        block.set_block(0, 0, bf);
        block.set_block(bf.rows(), bf.cols(), bg);
        h.set_block(at, block);
    }
    return h;
}

std::vector<Morphism> hom_space(McPtr a, McPtr b) {
    const Field& f = a->field();
    const int n = a->n();
    if (b->n() != n || b->field() != f) throw InputError("hom_space: incompatible objects");

    // Unknowns: entries of blocks at bidegrees supported in both objects.
    struct Slot {
        Bidegree at;
        std::size_t rows, cols, offset;
    };
    std::vector<Slot> slots;
    std::map<Bidegree, std::size_t> slot_of;
    std::size_t vars = 0;
    for (auto& [at, rk] : a->support()) {
        const std::size_t rb = static_cast<std::size_t>(b->rank_at(at));
        if (rb == 0) continue;
        slot_of[at] = slots.size();
        slots.push_back(Slot{at, rb, static_cast<std::size_t>(rk), vars});
        vars += rb * static_cast<std::size_t>(rk);
    }

    // Strictness rows: f_{to} d_i - d_i f_{at} = 0 entrywise.
    std::vector<Vec> rows;
    for (auto& [at, rk] : a->support()) {
        for (int i = 0; i < n; ++i) {
            const Bidegree to = at + diff_degree(i);
            const std::size_t tr = static_cast<std::size_t>(b->rank_at(to));
            if (tr == 0) continue;
            const Matrix da = a->diff(i, at);        // a(to) x a(at)
            const Matrix db = b->diff(i, at);        // b(to) x b(at)
            const auto it_to = slot_of.find(to);
            const auto it_at = slot_of.find(at);
            const bool lhs_active = it_to != slot_of.end() && !da.is_zero();
            const bool rhs_active = it_at != slot_of.end() && !db.is_zero();
            if (!lhs_active && !rhs_active) continue;
            for (std::size_t u = 0; u < tr; ++u) {
                for (std::size_t v = 0; v < static_cast<std::size_t>(rk); ++v) {
                    Vec row(vars, f.zero());
                    bool nonzero = false;
                    if (lhs_active) {
                        const Slot& s = slots[it_to->second];
                        for (std::size_t w = 0; w < s.cols; ++w) {
                            const Scalar& c = da.at(w, v);
                            if (f.is_zero(c)) continue;
                            row[s.offset + u * s.cols + w] = f.add(row[s.offset + u * s.cols + w], c);
                            nonzero = true;
                        }
                    }
                    if (rhs_active) {
                        const Slot& s = slots[it_at->second];
                        for (std::size_t w = 0; w < static_cast<std::size_t>(b->rank_at(at)); ++w) {
                            const Scalar& c = db.at(u, w);
                            if (f.is_zero(c)) continue;
                            const std::size_t idx = s.offset + w * s.cols + v;
                            row[idx] = f.sub(row[idx], c);
                            nonzero = true;
                        }
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
    }

    Subspace sol = vars == 0 ? Subspace(f, 0)
                             : kernel(Matrix::from_rows(f, rows, vars));
    if (vars == 0) return {};
    std::vector<Morphism> basis;
    for (std::size_t k = 0; k < sol.dim(); ++k) {
        Vec x = sol.basis().row(k);
        Morphism m(a, b);
        for (const Slot& s : slots) {
            Matrix block(f, s.rows, s.cols);
            for (std::size_t u = 0; u < s.rows; ++u)
                for (std::size_t v = 0; v < s.cols; ++v) block.at(u, v) = x[s.offset + u * s.cols + v];
            m.set_block(s.at, block);
        }
        basis.push_back(std::move(m));
    }
    return basis;
}

}  // namespace mspectra
