#include "mspectra/adjunction.hpp"

#include "mspectra/model.hpp"
#include "mspectra/random_gen.hpp"

namespace mspectra {

Multicomplex adjoint_j(const Multicomplex& m) {
    if (m.n() != 2) throw InputError("j expects a bicomplex (N=2)");
    Multicomplex out(4, m.field());
    for (auto& [at, rk] : m.support()) out.set_rank(j_bidegree_of_source(at), rk);
    for (auto& [key, block] : m.diff_blocks()) {
        const auto& [i, from] = key;
        out.set_diff(i + 1, j_bidegree_of_source(from), block);
    }
    return out;
}

Morphism adjoint_j(const Morphism& f) {
    auto src = std::make_shared<const Multicomplex>(adjoint_j(f.source()));
    auto dst = std::make_shared<const Multicomplex>(adjoint_j(f.target()));
    Morphism out(src, dst);
    for (auto& [at, block] : f.blocks()) out.set_block(j_bidegree_of_source(at), block);
    return out;
}

QResult adjoint_q(const Multicomplex& l) {
    if (l.n() != 4) throw InputError("q expects a 4-multicomplex");
    const Field& f = l.field();

    // Killed subspace per bidegree: the submodule generated by the images of
    // d_0 and d_3, closed under all structure maps.
    std::map<Bidegree, Subspace> killed;
    for (auto& [at, rk] : l.support())
        killed.emplace(at, Subspace(f, static_cast<std::size_t>(rk)));
    for (auto& [at, rk] : l.support()) {
        (void)rk;
        for (int i : {0, 3}) {
            const Bidegree to = at + diff_degree(i);
            auto it = killed.find(to);
            if (it == killed.end()) continue;
            it->second = it->second + image(l.diff(i, at));
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [at, sub] : killed) {
            if (sub.dim() == 0) continue;
            for (int i = 0; i < 4; ++i) {
                const Bidegree to = at + diff_degree(i);
                auto it = killed.find(to);
                if (it == killed.end()) continue;
                const Matrix d = l.diff(i, at);
                if (d.is_zero()) continue;
                Subspace grown = it->second + Subspace::span_rows(sub.basis() * d.transpose());
                if (grown.dim() != it->second.dim()) {
                    it->second = std::move(grown);
                    changed = true;
                }
            }
        }
    }

    QResult out;
    std::map<Bidegree, QuotientPresentation> pres;
    for (auto& [at, sub] : killed) {
        const std::size_t rk = static_cast<std::size_t>(l.rank_at(at));
        pres.emplace(at, quotient(Subspace::full(f, rk), sub));
    }

    auto bicomplex = std::make_shared<Multicomplex>(2, f);
    for (auto& [at, p] : pres)
        if (p.dim() > 0) bicomplex->set_rank(q_bidegree_of_source(at), static_cast<int>(p.dim()));
    for (auto& [at, p] : pres) {
        if (p.dim() == 0) continue;
        // d_0 and d_1 of the bicomplex come from d_1 and d_2 of l
        for (int i : {1, 2}) {
            const Bidegree to = at + diff_degree(i);
            auto it = pres.find(to);
            if (it == pres.end() || it->second.dim() == 0) continue;
            const Matrix d = l.diff(i, at);
            Matrix block(f, it->second.dim(), p.dim());
            for (std::size_t j = 0; j < p.dim(); ++j) {
                auto c = it->second.coords(d.apply(p.representatives().row(j)));
                if (!c) throw InternalError("q: induced differential escaped the quotient");
                for (std::size_t u = 0; u < it->second.dim(); ++u) block.at(u, j) = (*c)[u];
            }
            bicomplex->set_diff(i - 1, q_bidegree_of_source(at), block);
        }
    }
    out.bicomplex = std::move(bicomplex);
    out.quotients = std::move(pres);
    return out;
}

Morphism adjoint_q(const Morphism& f) {
    const QResult qa = adjoint_q(f.source());
    const QResult qb = adjoint_q(f.target());
    Morphism out(qa.bicomplex, qb.bicomplex);
    for (auto& [at, pa] : qa.quotients) {
        if (pa.dim() == 0) continue;
        auto it = qb.quotients.find(at);
        if (it == qb.quotients.end() || it->second.dim() == 0) continue;
        const QuotientPresentation& pb = it->second;
        // well-definedness: the killed subspace must map into the killed one
        for (std::size_t i = 0; i < pa.boundaries().dim(); ++i)
            if (!pb.boundaries().contains(f.block(at).apply(pa.boundaries().basis().row(i))))
                throw InternalError("q(f): morphism does not preserve the killed submodule");
        Matrix block(f.source().field(), pb.dim(), pa.dim());
        for (std::size_t j = 0; j < pa.dim(); ++j) {
            auto c = pb.coords(f.block(at).apply(pa.representatives().row(j)));
            if (!c) throw InternalError("q(f): image left the quotient");
            for (std::size_t u = 0; u < pb.dim(); ++u) block.at(u, j) = (*c)[u];
        }
        out.set_block(q_bidegree_of_source(at), block);
    }
    return out;
}

Multicomplex adjoint_jq(const QResult& q) { return adjoint_j(*q.bicomplex); }

Morphism adjunction_unit(const Multicomplex& l) {
    QResult q = adjoint_q(l);
    auto src = std::make_shared<const Multicomplex>(l);
    auto dst = std::make_shared<const Multicomplex>(adjoint_jq(q));
    Morphism unit(src, dst);
    const Field& f = l.field();
    for (auto& [at, p] : q.quotients) {
        if (p.dim() == 0) continue;
        const std::size_t rk = static_cast<std::size_t>(l.rank_at(at));
        Matrix block(f, p.dim(), rk);
        for (std::size_t j = 0; j < rk; ++j) {
            Vec e(rk, f.zero());
            e[j] = f.one();
            auto c = p.coords(e);
            if (!c) throw InternalError("unit: projection coordinates missing");
            for (std::size_t u = 0; u < p.dim(); ++u) block.at(u, j) = (*c)[u];
        }
        unit.set_block(at, block);
    }
    return unit;
}

bool counit_is_identity(const Multicomplex& m) {
    const QResult q = adjoint_q(adjoint_j(m));
    return *q.bicomplex == m;
}

SmokeReport quillen_adjunction_smoke(int samples, std::uint64_t seed) {
    SmokeReport report;
    Rng rng(seed);
    const Field f = Field::prime(5);
    for (int i = 0; i < samples; ++i) {
        ++report.samples;
        Morphism g = random_strict_morphism(rng, 2, f, Box{-2, 2, -2, 2});
        const Morphism jg = adjoint_j(g);
        MorphismAnalyzer base(g);
        MorphismAnalyzer lifted(jg);

        bool surjective = true;
        Box hull;
        if (auto h = g.source().support_hull()) hull.absorb(*h);
        if (auto h = g.target().support_hull()) hull.absorb(*h);
        for (Bidegree b : hull.points())
            if (!g.is_surjective_at(b)) {
                surjective = false;
                break;
            }
        if (surjective) {
            ++report.surjective_checked;
            if (!lifted.fibration(1, 1).ok) {
                report.ok = false;
                report.detail = "surjective bicomplex map whose image is not a (1,1)-fibration";
                return report;
            }
        }
        if (base.weak_equivalence(0, 0).ok) {
            ++report.equivalence_checked;
            if (!lifted.weak_equivalence(1, 1).ok) {
                report.ok = false;
                report.detail = "E_{0,0} equivalence not carried to E_{1,1}";
                return report;
            }
        }
    }
    return report;
}

}  // namespace mspectra
