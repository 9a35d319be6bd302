// Acceptance suite: one pass/fail line per criterion, exact checks only.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "mspectra/adjunction.hpp"
#include "mspectra/cone_module.hpp"
#include "mspectra/suite.hpp"

using namespace mspectra;

namespace {

const Field kQ = Field::rationals();
const Field kF5 = Field::prime(5);

std::string fmt_dims(const std::map<Bidegree, int>& dims) {
    std::ostringstream ss;
    for (auto& [at, d] : dims) ss << "(" << at.p << "," << at.q << ")=" << d << " ";
    return ss.str();
}

// ---------------------------------------------------------------- criterion 1
std::optional<std::string> criterion_basis() {
    for (int n : {2, 3, 4}) {
        const RuleTable rt = RuleTable::make(n);
        // brute force: all words of length <= 6, keep those already normal
        std::map<Bidegree, std::size_t> brute;
        std::vector<Word> frontier{Word{}};
        if (word_is_normal(rt, Word{})) brute[Bidegree{0, 0}] = 1;
        for (int len = 1; len <= 6; ++len) {
            std::vector<Word> next;
            for (const Word& w : frontier)
                for (int letter = 0; letter < n; ++letter) {
                    Word w2 = w;
                    w2.push_back(letter);
                    if (word_is_normal(rt, w2)) ++brute[word_bidegree(w2)];
                    next.push_back(std::move(w2));
                }
            frontier = std::move(next);
        }
        for (int p = -6; p <= 6; ++p)
            for (int q = -6; q <= 6; ++q) {
                std::size_t enumerated = 0;
                for (const Word& w : pattern_basis(n, {p, q}))
                    if (w.size() <= 6) ++enumerated;
                const auto it = brute.find({p, q});
                const std::size_t expect = it == brute.end() ? 0 : it->second;
                if (enumerated != expect)
                    return "N=" + std::to_string(n) + " at (" + std::to_string(p) + "," +
                           std::to_string(q) + "): basis " + std::to_string(enumerated) +
                           " vs brute force " + std::to_string(expect);
            }
    }
    // the four elements of the N=2 algebra, exactly
    if (pattern_basis(2, {0, 0}) != std::vector<Word>{Word{}}) return "A_2 unit wrong";
    if (pattern_basis(2, {0, 1}) != std::vector<Word>{Word{0}}) return "A_2 d0 wrong";
    if (pattern_basis(2, {-1, 0}) != std::vector<Word>{Word{1}}) return "A_2 d1 wrong";
    if (pattern_basis(2, {-1, 1}) != std::vector<Word>{Word{1, 0}}) return "A_2 d1.d0 wrong";
    return std::nullopt;
}

// ---------------------------------------------------------------- criterion 2
std::optional<std::string> criterion_confluence() {
    for (int n = 2; n <= 6; ++n) {
        const auto failures = confluence_check(n);
        if (!failures.empty())
            return "N=" + std::to_string(n) + ": unresolved overlap " +
                   word_to_string(failures.front().overlap);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- criterion 3
std::optional<std::string> zw_dims_once(int n, int k, Bidegree at, const Field& field, int min_p,
                                        std::map<Bidegree, int>* second_page_one) {
    const MaterializedCone mat = ConeModule::zw(n, field, k, at).materialize_min_p(min_p);
    if (!mat.object->is_valid()) return std::string("window is not a valid multicomplex");
    SpectralContext ctx(mat.object);
    const Bidegree tail{at.p - k, at.q - k + 1};
    for (int i = 1; i <= k; ++i) {
        for (Bidegree hot : {at, tail}) {
            const std::size_t d = ctx.page_dim(i, hot);
            if (d != 1)
                return "page " + std::to_string(i) + " at (" + hot.to_string() + ") has dim " +
                       std::to_string(d) + ", want 1";
        }
    }
    for (Bidegree hot : {at, tail})
        if (ctx.page_dim(k + 1, hot) != 0)
            return "page " + std::to_string(k + 1) + " at (" + hot.to_string() + ") nonzero";
    // every other bidegree of the trusted region is zero on pages 1..k
    Box region;
    region.absorb(at);
    region.absorb(tail);
    region = region.inflated(2);
    region.pmin = std::max(region.pmin, min_p + std::max(k + 1, n - 1) + 1);
    for (int i = 1; i <= k + 1; ++i)
        for (Bidegree x : region.points()) {
            if (x == at || x == tail) continue;
            if (ctx.zw_ambient_dim(i, x) == 0) continue;
            if (ctx.page_dim(i, x) != 0)
                return "page " + std::to_string(i) + " unexpectedly nonzero at (" + x.to_string() +
                       ")";
        }
    // second spectral sequence: page 1 vanishes on the trusted region
    auto inv = std::make_shared<const Multicomplex>(involve(*mat.object));
    SpectralContext inv_ctx(inv);
    second_page_one->clear();
    for (Bidegree x : region.points()) {
        const Bidegree z = involution_bidegree(n, x);
        if (inv_ctx.zw_ambient_dim(1, z) == 0) continue;
        const std::size_t d = inv_ctx.page_dim(1, z);
        if (d > 0) (*second_page_one)[x] = static_cast<int>(d);
    }
    if (!second_page_one->empty())
        return "''E_1 nonzero: " + fmt_dims(*second_page_one);
    return std::nullopt;
}

std::optional<std::string> criterion_zw_pages() {
    std::optional<std::string> failure;
    std::mutex mu;
    struct Cell {
        int n, k;
        Bidegree at;
    };
    std::vector<Cell> cells;
    for (int n : {2, 3, 4})
        for (int k = 1; k <= 4; ++k)
            for (Bidegree at : {Bidegree{0, 0}, Bidegree{2, -1}}) cells.push_back({n, k, at});
    parallel_for(static_cast<int>(cells.size()), 2, [&](int idx) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (failure) return;
        }
        const Cell& c = cells[static_cast<std::size_t>(idx)];
        const Field& field = c.n == 4 ? kF5 : kQ;
        const int min_p = c.at.p - c.k - std::max(c.k + 1, c.n - 1) - 3;
        std::map<Bidegree, int> dims1, dims2;
        auto first = zw_dims_once(c.n, c.k, c.at, field, min_p, &dims1);
        // window adequacy: one more column of the cone, identical answers
        auto second = zw_dims_once(c.n, c.k, c.at, field, min_p - 1, &dims2);
        std::optional<std::string> local;
        if (first)
            local = *first;
        else if (second)
            local = "radius+1 rerun: " + *second;
        else if (dims1 != dims2)
            local = "window adequacy rerun changed the answers";
        if (local) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure)
                failure = "N=" + std::to_string(c.n) + " k=" + std::to_string(c.k) + " at (" +
                          c.at.to_string() + "): " + *local;
        }
    });
    return failure;
}

// ---------------------------------------------------------------- criterion 4
std::optional<std::string> criterion_oracle() {
    std::optional<std::string> failure;
    std::mutex mu;
    struct Case {
        int n;
        Field field;
    };
    std::vector<Case> cases;
    for (int n : {2, 3, 4}) {
        cases.push_back({n, kQ});
        cases.push_back({n, kF5});
    }
    const int per_case = 150;  // 300 instances per N across the two fields
    parallel_for(static_cast<int>(cases.size()) * per_case, 2, [&](int k) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (failure) return;
        }
        const Case& c = cases[static_cast<std::size_t>(k / per_case)];
        Rng rng(0xACCE4000ull + static_cast<std::uint64_t>(k));
        McPtr a = std::make_shared<const Multicomplex>(
            random_multicomplex(rng, c.n, c.field, Box{-2, 2, -2, 2}, 3, 4));
        auto local = check_oracle_instance(a, 4);
        if (!local && k % 3 == 0) {
            // the second spectral sequence is the first one of the
            // involution image; sheared supports get their own oracle pass
            McPtr ainv = std::make_shared<const Multicomplex>(involve(*a));
            local = check_oracle_instance(ainv, 4);
        }
        if (local) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure)
                failure = "N=" + std::to_string(c.n) + " over " + c.field.to_string() +
                          " (instance " + std::to_string(k) + "): " + *local;
        }
    });
    return failure;
}

// ---------------------------------------------------------------- criterion 5
std::optional<std::string> criterion_rlp() {
    std::optional<std::string> failure;
    std::mutex mu;
    struct Case {
        int n, r, s;
    };
    std::vector<Case> cases;
    for (int n : {2, 4})
        for (int r = 0; r <= 2; ++r)
            for (int s = 0; s <= 2; ++s) cases.push_back({n, r, s});
    const int per_case = 200;
    parallel_for(static_cast<int>(cases.size()) * per_case, 2, [&](int k) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (failure) return;
        }
        const Case& c = cases[static_cast<std::size_t>(k / per_case)];
        Rng rng(0xACCE5000ull + static_cast<std::uint64_t>(k));
        const Morphism f = random_strict_morphism(rng, c.n, kF5, Box{-1, 1, -1, 1});
        const auto local = check_rlp_instance(f, c.r, c.s);
        if (local) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure)
                failure = "N=" + std::to_string(c.n) + " (r,s)=(" + std::to_string(c.r) + "," +
                          std::to_string(c.s) + ") instance " + std::to_string(k) + ": " + *local;
        }
    });
    return failure;
}

// ---------------------------------------------------------------- criterion 6
std::optional<std::string> criterion_axioms() {
    std::optional<std::string> failure;
    std::mutex mu;
    const std::vector<int> ns{2, 4};
    const int per = 50;
    parallel_for(static_cast<int>(ns.size()) * per, 2, [&](int k) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (failure) return;
        }
        const int n = ns[static_cast<std::size_t>(k / per)];
        Rng rng(0xACCE6000ull + static_cast<std::uint64_t>(k));
        const int r = rng.range(0, 2), s = rng.range(0, 2);
        std::optional<std::string> local;
        // isomorphism containment
        McPtr a = std::make_shared<const Multicomplex>(
            random_multicomplex(rng, n, kF5, Box{-1, 1, -1, 1}));
        if (!MorphismAnalyzer(random_conjugation(rng, a)).weak_equivalence(r, s).ok)
            local = "an isomorphism is not in the class";
        if (!local) {
            auto [g, f] = random_composable_pair(rng, n, kF5, Box{-1, 1, -1, 1});
            local = check_two_of_three(g, f, r, s);
        }
        if (!local) {
            Morphism m1 = random_strict_morphism(rng, n, kF5, Box{-1, 1, -1, 1});
            Morphism m2 = random_strict_morphism(rng, n, kF5, Box{-1, 1, -1, 1});
            local = check_retract(rng, m1, m2, r, s);
            if (!local) local = check_monotone(m1, r, s);
        }
        if (local) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = "N=" + std::to_string(n) + ": " + *local;
        }
    });
    return failure;
}

// ---------------------------------------------------------------- criterion 7
std::optional<std::string> criterion_non_equivalence() {
    for (int n : {2, 4}) {
        const int min_p = -10;
        const Morphism pi = zw_infinity_projection(n, kQ, {0, 0}, min_p);
        if (!pi.validate().empty()) return std::string("colimit projection is not strict");
        const Box region{-4, 0, -4, 0};
        for (int rerun = 0; rerun <= 1; ++rerun) {
            const Morphism probe =
                rerun == 0 ? pi : zw_infinity_projection(n, kQ, {0, 0}, min_p - 1);
            MorphismAnalyzer an(probe);
            for (int r = 0; r <= 2; ++r)
                if (!an.side_equivalence('1', r, region).ok)
                    return "N=" + std::to_string(n) +
                           ": projection fails the one-sided check at r=" + std::to_string(r);
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s <= 3; ++s) {
                    const VerdictPart v = an.weak_equivalence(r, s, region);
                    if (v.ok)
                        return "N=" + std::to_string(n) + ": projection claimed to be in E_{" +
                               std::to_string(r) + "," + std::to_string(s) + "}";
                    bool at_origin = false;
                    for (const Certificate& c : v.certificates)
                        if (c.side == '2' && c.at == Bidegree{0, 0}) at_origin = true;
                    if (!at_origin)
                        return "N=" + std::to_string(n) +
                               ": no second-side certificate at the origin";
                }
        }
    }
    // 0 -> K sits in E_{r,3} but not E_{r,2}
    auto zero = std::make_shared<const Multicomplex>(zero_multicomplex(4, kQ));
    Multicomplex k(4, kQ);
    k.set_rank({0, 0}, 1);
    k.set_rank({0, 1}, 1);
    Matrix d(kQ, 1, 1);
    d.at(0, 0) = kQ.one();
    k.set_diff(0, {0, 0}, d);
    auto kp = std::make_shared<const Multicomplex>(std::move(k));
    MorphismAnalyzer an(zero_morphism(zero, kp));
    for (int r = 0; r <= 2; ++r) {
        if (!an.weak_equivalence(r, 3).ok)
            return "0 -> K should be in E_{" + std::to_string(r) + ",3}";
        if (an.weak_equivalence(r, 2).ok)
            return "0 -> K should not be in E_{" + std::to_string(r) + ",2}";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- criterion 8
std::optional<std::string> criterion_adjunction() {
    // counit identity on 100 random bicomplexes over both fields
    for (int i = 0; i < 100; ++i) {
        Rng rng(0xACCE8000ull + static_cast<std::uint64_t>(i));
        const Field& f = i % 2 == 0 ? kQ : kF5;
        const Multicomplex m = random_multicomplex(rng, 2, f, Box{-2, 2, -2, 2}, 3, 3);
        if (!counit_is_identity(m))
            return "counit fails on instance " + std::to_string(i);
    }
    // triangle identities and involution preservation on samples
    for (int i = 0; i < 40; ++i) {
        Rng rng(0xACCE8100ull + static_cast<std::uint64_t>(i));
        const Multicomplex l = random_multicomplex(rng, 4, kF5, Box{-2, 2, -2, 2});
        const Morphism unit = adjunction_unit(l);
        if (!unit.validate().empty()) return std::string("unit is not strict");
        const Morphism q_unit = adjoint_q(unit);
        Box hull;
        if (auto h = q_unit.source().support_hull()) hull.absorb(*h);
        for (Bidegree x : hull.points())
            if (q_unit.block(x) !=
                Matrix::identity(kF5, static_cast<std::size_t>(q_unit.source().rank_at(x))))
                return std::string("triangle identity q(unit) = id fails");
        if (*adjoint_q(involve(l)).bicomplex != involve(*adjoint_q(l).bicomplex))
            return std::string("q does not preserve the involution");
        const Multicomplex m = random_multicomplex(rng, 2, kF5, Box{-2, 2, -2, 2});
        if (adjoint_j(involve(m)) != involve(adjoint_j(m)))
            return std::string("j does not preserve the involution");
        // unit of j(M) is an isomorphism
        const Morphism unit_jm = adjunction_unit(adjoint_j(m));
        Box jh;
        if (auto h = unit_jm.source().support_hull()) jh.absorb(*h);
        for (Bidegree x : jh.points())
            if (!unit_jm.is_surjective_at(x) || !unit_jm.is_injective_at(x))
                return std::string("unit of j(M) is not an isomorphism");
    }
    // unit(K) is not an E_{1,1} equivalence
    {
        Multicomplex k(4, kQ);
        k.set_rank({0, 0}, 1);
        k.set_rank({0, 1}, 1);
        Matrix d(kQ, 1, 1);
        d.at(0, 0) = kQ.one();
        k.set_diff(0, {0, 0}, d);
        if (MorphismAnalyzer(adjunction_unit(k)).weak_equivalence(1, 1).ok)
            return std::string("unit of the contractible piece slipped into E_{1,1}");
    }
    // unit(ZW_s^4(0,0)) is in E_{1,1} for s = 1,2,3, with adequacy reruns
    for (int s : {1, 2, 3}) {
        const int min_p = -s - 9;
        bool verdict[2];
        for (int rerun = 0; rerun <= 1; ++rerun) {
            const MaterializedCone mat =
                ConeModule::zw(4, kF5, s, {0, 0}).materialize_min_p(min_p - rerun);
            const Morphism unit = adjunction_unit(*mat.object);
            if (!unit.validate().empty()) return std::string("unit of the cone is not strict");
            Box region{-s - 3, 1, -s - 3, 1};
            MorphismAnalyzer an(unit);
            verdict[rerun] = an.weak_equivalence(1, 1, region).ok;
        }
        if (verdict[0] != verdict[1])
            return "s=" + std::to_string(s) + ": window adequacy rerun changed the verdict";
        if (!verdict[0]) return "unit of ZW_" + std::to_string(s) + " is not in E_{1,1}";
    }
    return std::nullopt;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string name;
        std::function<std::optional<std::string>()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "letter-algebra basis vs brute force", criterion_basis},
        {2, "rewriting system confluence (N=2..6)", criterion_confluence},
        {3, "witness-cone page dimensions", criterion_zw_pages},
        {4, "witness pages vs classical oracle (200 per N)", criterion_oracle},
        {5, "lifting property vs class membership (200 per case)", criterion_rlp},
        {6, "equivalence class axioms on samples", criterion_axioms},
        {7, "one-sided but not two-sided equivalences", criterion_non_equivalence},
        {8, "bicomplex comparison adjunction", criterion_adjunction},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::optional<std::string> failure;
        try {
            failure = c.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const auto secs =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count() /
            1000.0;
        if (failure) {
            ++failures;
            std::cout << "FAIL  " << c.number << "  " << c.name << "  [" << secs << "s]  "
                      << *failure << "\n";
        } else {
            std::cout << "PASS  " << c.number << "  " << c.name << "  [" << secs << "s]\n";
        }
        std::cout.flush();
    }
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
