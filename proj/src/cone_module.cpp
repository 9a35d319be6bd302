#include "mspectra/cone_module.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace mspectra {

namespace {

// All module-normal pattern words with word p-degree >= min_word_p.
std::vector<Word> pattern_words_p_at_least(int n, int min_word_p, bool allow_trailing_delta0) {
    std::vector<Word> out;
    if (min_word_p > 0) return out;
    for (int eps = 0; eps <= 1; ++eps) {
        if (eps && -(n - 1) < min_word_p) continue;
        for (int t = 0; t <= (allow_trailing_delta0 ? 1 : 0); ++t) {
            Word prefix;
            if (eps) prefix.push_back(n - 1);
            std::vector<int> seq;
            const int base_p = eps ? -(n - 1) : 0;
            std::function<void(int)> dfs = [&](int p_used) {
                Word w = prefix;
                w.insert(w.end(), seq.begin(), seq.end());
                if (t) w.push_back(0);
                out.push_back(std::move(w));
                for (int i = 1; i <= n - 2; ++i) {
                    if (p_used - i < min_word_p) continue;
                    seq.push_back(i);
                    dfs(p_used - i);
                    seq.pop_back();
                }
            };
            dfs(base_p);
        }
    }
    return out;
}

}  // namespace

ConeModule::ConeModule(int n, Field f, std::vector<ConeGroup> groups)
    : n_(n), field_(f), groups_(std::move(groups)), rules_(RuleTable::make(n)) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const ConeGroup& grp = groups_[g];
        if (grp.length < 1) throw InternalError("cone group must have length >= 1");
        for (int j = 0; j < grp.length; ++j) {
            GenInfo info;
            info.group = static_cast<int>(g);
            info.index = j;
            info.at = grp.base + Bidegree{-j, -j};
            info.name = grp.prefix + (grp.kind == ConeGroup::Kind::Chain || grp.length > 1
                                          ? std::to_string(j)
                                          : std::string());
            info.chain = grp.kind == ConeGroup::Kind::Chain;
            gens_.push_back(std::move(info));
        }
    }
}

ConeModule ConeModule::zw(int n, Field f, int k, Bidegree at) {
    if (k < 0) throw InputError("zw: negative stage");
    if (k == 0) return ConeModule(n, f, {ConeGroup{ConeGroup::Kind::Free, at, 1, "x"}});
    return ConeModule(n, f, {ConeGroup{ConeGroup::Kind::Chain, at, k, "a"}});
}

ConeModule ConeModule::bw(int n, Field f, int r, Bidegree zw_at) {
    if (r < 0) throw InputError("bw: negative stage");
    const Bidegree pq = zw_at;
    if (r == 0) return ConeModule(n, f, {});
    if (r == 1)
        return ConeModule(n, f, {ConeGroup{ConeGroup::Kind::Free, pq + Bidegree{0, -1}, 1, "a"}});
    return ConeModule(
        n, f,
        {ConeGroup{ConeGroup::Kind::Chain, pq + Bidegree{r - 1, r - 2}, r - 1, "b"},
         ConeGroup{ConeGroup::Kind::Free, pq + Bidegree{0, -1}, 1, "a"},
         ConeGroup{ConeGroup::Kind::Chain, pq + Bidegree{-1, -1}, r - 1, "c"}});
}

ConeModule ConeModule::zw_infinity(int n, Field f, Bidegree at, int min_p) {
    const int len = std::max(1, at.p - min_p + 2);
    return ConeModule(n, f, {ConeGroup{ConeGroup::Kind::Chain, at, len, "a"}});
}

int zw_stabilization_bound(Bidegree at, int u) { return at.p - u + 2; }

ModElem ConeModule::normal_form(const ModElem& x) const {
    ModElem out;
    std::deque<std::pair<ModTerm, Scalar>> work(x.begin(), x.end());
    auto put = [&](ModTerm t, Scalar c) {
        auto [it, inserted] = out.try_emplace(std::move(t), c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) out.erase(it);
        } else if (field_.is_zero(it->second)) {
            out.erase(it);
        }
    };
    while (!work.empty()) {
        auto [term, c] = std::move(work.front());
        work.pop_front();
        if (field_.is_zero(c)) continue;
        auto& [gen, w] = term;
        // structure maps beyond the alphabet act as zero
        bool out_of_range = false;
        for (int letter : w)
            if (letter >= n_) out_of_range = true;
        if (out_of_range) continue;
        // leftmost algebra rewrite
        std::size_t pos = w.size();
        const RewriteRule* rule = nullptr;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            rule = rules_.rule_for(w[i], w[i + 1]);
            if (rule) {
                pos = i;
                break;
            }
        }
        if (rule) {
            for (auto& [pair, coef] : rule->rhs) {
                Word w2 = w;
                w2[pos] = pair[0];
                w2[pos + 1] = pair[1];
                work.emplace_back(ModTerm{gen, std::move(w2)}, coef == 1 ? c : field_.neg(c));
            }
            continue;
        }
        const GenInfo& info = gens_[static_cast<std::size_t>(gen)];
        if (info.chain && !w.empty() && w.back() == 0) {
            // delta_0 g_u = sum_{j=1}^{u} (-1)^{j+1} delta_j g_{u-j}
            const int u = info.index;
            const int group_first = gen - info.index;
            for (int j = 1; j <= u; ++j) {
                if (j > n_ - 1) break;  // delta_j = 0 beyond the alphabet
                Word w2 = w;
                w2.back() = j;
                const Scalar coef = j % 2 == 1 ? c : field_.neg(c);
                work.emplace_back(ModTerm{group_first + (u - j), std::move(w2)}, coef);
            }
            continue;
        }
        put(ModTerm{gen, w}, c);
    }
    return out;
}

ModElem ConeModule::act_word(const Word& w, const ModElem& x) const {
    ModElem shifted;
    for (auto& [term, c] : x) {
        Word combined = w;
        combined.insert(combined.end(), term.second.begin(), term.second.end());
        shifted[{term.first, std::move(combined)}] = c;
    }
    return normal_form(shifted);
}

const std::vector<ModTerm>& ConeModule::basis_at(Bidegree at) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = basis_cache_.find(at);
    if (it != basis_cache_.end()) return it->second;
    std::vector<ModTerm> basis;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        const GenInfo& info = gens_[g];
        const Bidegree need = at - info.at;
        for (Word& w : pattern_basis(n_, need, !info.chain))
            basis.emplace_back(static_cast<int>(g), std::move(w));
    }
    // canonical order: generator-major, letters lexicographic within
    std::sort(basis.begin(), basis.end());
    return basis_cache_.emplace(at, std::move(basis)).first->second;
}

Vec ConeModule::coords(const ModElem& x, Bidegree at) const {
    const std::vector<ModTerm>& basis = basis_at(at);
    Vec v(basis.size(), field_.zero());
    for (auto& [term, c] : x) {
        auto it = std::lower_bound(basis.begin(), basis.end(), term);
        if (it == basis.end() || *it != term)
            throw InternalError("cone module coords: term outside basis at (" + at.to_string() + ")");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

Matrix ConeModule::action(int i, Bidegree from) const {
    const std::vector<ModTerm>& src = basis_at(from);
    const Bidegree to = from + diff_degree(i);
    const std::vector<ModTerm>& dst = basis_at(to);
    Matrix m(field_, dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Word w{i};
        w.insert(w.end(), src[j].second.begin(), src[j].second.end());
        ModElem e = normal_form(ModElem{{ModTerm{src[j].first, std::move(w)}, field_.one()}});
        const Vec col = coords(e, to);
        for (std::size_t u = 0; u < dst.size(); ++u) m.at(u, j) = col[u];
    }
    return m;
}

MaterializedCone ConeModule::materialize_min_p(int min_p) const {
    MaterializedCone out;
    std::map<Bidegree, std::vector<ModTerm>> basis;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        const GenInfo& info = gens_[g];
        if (info.at.p < min_p) continue;
        for (const Word& w : pattern_words_p_at_least(n_, min_p - info.at.p, !info.chain)) {
            const Bidegree at = info.at + word_bidegree(w);
            if (at.p < min_p) continue;
            basis[at].emplace_back(static_cast<int>(g), w);
        }
    }
    for (auto& [at, terms] : basis) std::sort(terms.begin(), terms.end());
    auto mc = std::make_shared<Multicomplex>(n_, field_);
    for (auto& [at, terms] : basis) mc->set_rank(at, static_cast<int>(terms.size()));
    for (auto& [at, terms] : basis) {
        (void)terms;
        for (int i = 0; i < n_; ++i) {
            const Bidegree to = at + diff_degree(i);
            if (to.p < min_p || mc->rank_at(to) == 0) continue;
            mc->set_diff(i, at, action(i, at));
        }
    }
    out.object = std::move(mc);
    out.basis = std::move(basis);
    return out;
}

MaterializedCone ConeModule::materialize_box(Box window) const {
    MaterializedCone whole = materialize_min_p(window.pmin);
    auto mc = std::make_shared<Multicomplex>(n_, field_);
    MaterializedCone out;
    for (auto& [at, terms] : whole.basis) {
        if (!window.contains(at)) continue;
        mc->set_rank(at, static_cast<int>(terms.size()));
        out.basis[at] = terms;
    }
    for (auto& [key, block] : whole.object->diff_blocks()) {
        const auto& [i, from] = key;
        if (!window.contains(from) || !window.contains(from + diff_degree(i))) continue;
        mc->set_diff(i, from, block);
    }
    mc->set_truncated(true, window);
    out.object = std::move(mc);
    return out;
}

ModElem iota_generator_image(int n, const Field& f, int r, int m) {
    if (r < 1 || m < 0 || m >= r) throw InputError("iota: bad component");
    // Generator indexing in ConeModule::bw: r == 1 -> {a}=0;
    // r >= 2 -> b_t = t (t < r-1), a = r-1, c_t = r + t.
    const Scalar one = f.one();
    ModElem img;
    const int a_gen = r == 1 ? 0 : r - 1;
    if (m <= n - 1) img[{a_gen, Word{m}}] = one;  // d_m a, zero beyond the alphabet
    if (r >= 2) {
        for (int i = m + 1; i <= r + m - 1; ++i) {
            if (i > n - 1) break;
            const int t = r + m - 1 - i;  // b_t
            const int sign = (m + i) % 2 == 0 ? 1 : -1;
            img[{t, Word{i}}] = sign == 1 ? one : f.neg(one);
        }
        if (m >= 1) img[{r + (m - 1), Word{}}] = one;  // c_{m-1}
    }
    return img;
}

namespace {

Morphism cone_morphism(const ConeModule& src, const MaterializedCone& msrc,
                       const ConeModule& dst, const MaterializedCone& mdst,
                       const std::vector<ModElem>& gen_images) {
    const Field& f = src.field();
    Morphism out(msrc.object, mdst.object);
    for (auto& [at, terms] : msrc.basis) {
        auto dit = mdst.basis.find(at);
        const std::size_t dst_rank = dit == mdst.basis.end() ? 0 : dit->second.size();
        if (dst_rank == 0) continue;
        Matrix block(f, dst_rank, terms.size());
        for (std::size_t j = 0; j < terms.size(); ++j) {
            const auto& [gen, w] = terms[j];
            ModElem image = dst.act_word(w, gen_images[static_cast<std::size_t>(gen)]);
            const Vec col = dst.coords(image, at);
            for (std::size_t u = 0; u < dst_rank; ++u) block.at(u, j) = col[u];
        }
        out.set_block(at, block);
    }
    return out;
}

}  // namespace

Morphism iota_morphism(int n, Field f, int r, Bidegree at, int min_p) {
    const ConeModule src = ConeModule::zw(n, f, r, at);
    const ConeModule dst = ConeModule::bw(n, f, r, at);
    const MaterializedCone msrc = src.materialize_min_p(min_p);
    const MaterializedCone mdst = dst.materialize_min_p(min_p);
    std::vector<ModElem> images;
    for (int m = 0; m < r; ++m) images.push_back(iota_generator_image(n, f, r, m));
    return cone_morphism(src, msrc, dst, mdst, images);
}

namespace {

Morphism projection_to_point(const ConeModule& src, int min_p, Bidegree at, Field f, int n) {
    const MaterializedCone msrc = src.materialize_min_p(min_p);
    auto point = std::make_shared<const Multicomplex>(point_module(n, f, at));
    Morphism out(msrc.object, point);
    auto it = msrc.basis.find(at);
    if (it != msrc.basis.end()) {
        Matrix block(f, 1, it->second.size());
        for (std::size_t j = 0; j < it->second.size(); ++j)
            if (it->second[j] == ModTerm{0, Word{}}) block.at(0, j) = f.one();
        out.set_block(at, block);
    }
    return out;
}

}  // namespace

Morphism q_projection_morphism(int n, Field f, int r, int min_p) {
    if (r < 1) throw InputError("q projection needs r >= 1");
    return projection_to_point(ConeModule::zw(n, f, r, Bidegree{0, 0}), min_p, Bidegree{0, 0}, f, n);
}

Morphism zw_infinity_projection(int n, Field f, Bidegree at, int min_p) {
    return projection_to_point(ConeModule::zw_infinity(n, f, at, min_p), min_p, at, f, n);
}

}  // namespace mspectra
