#include "mspectra/suite.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "mspectra/adjunction.hpp"

namespace mspectra {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    const int threads = std::min(workers, count);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::optional<std::string> check_oracle_instance(McPtr a, int rmax) {
    SpectralContext ctx(a);
    ClassicalOracle oracle(a);
    const auto hull = a->support_hull();
    for (int r = 0; r <= rmax; ++r) {
        std::map<Bidegree, int> witness;
        if (hull)
            for (Bidegree x : hull->inflated(r + 1).points()) {
                if (ctx.zw_ambient_dim(r, x) == 0) continue;
                const std::size_t d = ctx.page_dim(r, x);
                if (d > 0) witness[x] = static_cast<int>(d);
            }
        const std::map<Bidegree, int> classical = oracle.page_dims(r);
        if (witness != classical)
            return "witness and classical page dimensions disagree at r=" + std::to_string(r) +
                   " (if all else is sound, suspect the filtration direction of the oracle)";
    }
    if (rmax >= 2) {
        std::map<Bidegree, int> via_one = page_two_via_page_one(a);
        std::map<Bidegree, int> direct;
        if (hull)
            for (Bidegree x : hull->inflated(3).points()) {
                if (ctx.zw_ambient_dim(2, x) == 0) continue;
                const std::size_t d = ctx.page_dim(2, x);
                if (d > 0) direct[x] = static_cast<int>(d);
            }
        if (via_one != direct) return "page 2 disagrees with homology of (E_1, d_1)";
    }
    return std::nullopt;
}

std::optional<std::string> check_rlp_instance(const Morphism& f, int r, int s) {
    MorphismAnalyzer an(f);
    const auto acyclic = an.acyclic_fibration_crosscheck(r, s);
    if (!acyclic.agree)
        return "RLP against I_{" + std::to_string(r) + "," + std::to_string(s) +
               "} disagrees with (fibration and weak equivalence)" +
               (acyclic.sweep.failed ? " at " + acyclic.sweep.failed->to_string() : "");
    const auto fib = an.fibration_crosscheck(r, s);
    if (!fib.agree)
        return "RLP against J_{" + std::to_string(r) + "," + std::to_string(s) +
               "} disagrees with fibration" +
               (fib.sweep.failed ? " at " + fib.sweep.failed->to_string() : "");
    return std::nullopt;
}

std::optional<std::string> check_two_of_three(const Morphism& g, const Morphism& f, int r, int s) {
    const Morphism gf = compose(g, f);
    const bool in_f = MorphismAnalyzer(f).weak_equivalence(r, s).ok;
    const bool in_g = MorphismAnalyzer(g).weak_equivalence(r, s).ok;
    const bool in_gf = MorphismAnalyzer(gf).weak_equivalence(r, s).ok;
    const int count = int(in_f) + int(in_g) + int(in_gf);
    if (count == 2) return "two-out-of-three violated";
    return std::nullopt;
}

std::optional<std::string> check_retract(Rng& rng, const Morphism& f, const Morphism& h, int r,
                                         int s) {
    Morphism g = direct_sum(f, h);
    // conjugate both ends so the retract diagram is not literally split
    Morphism pre = random_conjugation(rng, g.source_ptr());
    Morphism post = random_conjugation(rng, g.target_ptr());
    Morphism g2(pre.target_ptr(), post.target_ptr());
    for (auto& [at, rk] : g.source().support()) {
        (void)rk;
        g2.set_block(at, post.block(at) * g.block(at) * inverse(pre.block(at)));
    }
    const bool g_in = MorphismAnalyzer(g2).weak_equivalence(r, s).ok;
    if (!g_in) return std::nullopt;  // nothing to conclude
    const bool f_in = MorphismAnalyzer(f).weak_equivalence(r, s).ok;
    if (!f_in) return "retract of an equivalence is not an equivalence";
    return std::nullopt;
}

std::optional<std::string> check_monotone(const Morphism& f, int r, int s) {
    MorphismAnalyzer an(f);
    if (!an.weak_equivalence(r, s).ok) return std::nullopt;
    if (!an.weak_equivalence(r + 1, s).ok || !an.weak_equivalence(r, s + 1).ok)
        return "class containment E_{r,s} in E_{r',s'} violated";
    return std::nullopt;
}

std::optional<std::string> check_involution_equivariance(const Morphism& f, int r, int s) {
    const bool direct = MorphismAnalyzer(f).weak_equivalence(r, s).ok;
    const bool via_inv = MorphismAnalyzer(involve(f)).weak_equivalence(s, r).ok;
    if (direct != via_inv) return "involution does not swap the two indices";
    return std::nullopt;
}

namespace {

struct SectionRunner {
    explicit SectionRunner(std::string name) { section.name = std::move(name); }
    SuiteSection section;
    std::mutex mu;
    std::map<std::pair<int, int>, std::string> keyed;  // (work item, sub-check)
    void record(int item, int sub, const std::optional<std::string>& failure) {
        std::lock_guard<std::mutex> lock(mu);
        ++section.checked;
        if (failure) keyed[{item, sub}] = *failure;
    }
    SuiteSection finish() {
        for (auto& [key, msg] : keyed) {
            (void)key;
            section.failures.push_back(msg);
        }
        return std::move(section);
    }
};

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    SuiteReport report;
    report.config = config;

    {  // witness pages vs oracle
        SectionRunner runner("oracle");
        struct Case {
            int n;
            Field field;
        };
        const std::vector<Case> cases{{2, Field::rationals()}, {2, Field::prime(5)},
                                      {3, Field::prime(5)},    {4, Field::prime(5)}};
        const int per = config.oracle_samples;
        parallel_for(static_cast<int>(cases.size()) * per, config.workers, [&](int k) {
            const Case& c = cases[static_cast<std::size_t>(k) / static_cast<std::size_t>(per)];
            Rng rng(config.seed * 1000003ull + static_cast<std::uint64_t>(k));
            McPtr a = std::make_shared<const Multicomplex>(
                random_multicomplex(rng, c.n, c.field, Box{-2, 2, -2, 2}));
            runner.record(k, 0, check_oracle_instance(a, 4));
        });
        report.sections.push_back(runner.finish());
    }

    {  // lifting-property cross-checks
        SectionRunner runner("rlp");
        struct Case {
            int n, r, s;
        };
        std::vector<Case> cases;
        for (int n : {2, 4})
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s <= 2; ++s) cases.push_back({n, r, s});
        const int per = config.rlp_samples;
        parallel_for(static_cast<int>(cases.size()) * per, config.workers, [&](int k) {
            const Case& c = cases[static_cast<std::size_t>(k) / static_cast<std::size_t>(per)];
            Rng rng(config.seed * 7777777ull + static_cast<std::uint64_t>(k));
            Morphism f = random_strict_morphism(rng, c.n, Field::prime(5), Box{-1, 1, -1, 1});
            runner.record(k, 0, check_rlp_instance(f, c.r, c.s));
        });
        report.sections.push_back(runner.finish());
    }

    {  // class axioms
        SectionRunner runner("class-axioms");
        const std::vector<int> ns{2, 4};
        const int per = config.axiom_samples;
        parallel_for(static_cast<int>(ns.size()) * per, config.workers, [&](int k) {
            const int n = ns[static_cast<std::size_t>(k) / static_cast<std::size_t>(per)];
            Rng rng(config.seed * 424243ull + static_cast<std::uint64_t>(k));
            const Field f5 = Field::prime(5);
            const int r = rng.range(0, 2), s = rng.range(0, 2);
            auto [g, f] = random_composable_pair(rng, n, f5, Box{-1, 1, -1, 1});
            runner.record(k, 0, check_two_of_three(g, f, r, s));
            Morphism m1 = random_strict_morphism(rng, n, f5, Box{-1, 1, -1, 1});
            Morphism m2 = random_strict_morphism(rng, n, f5, Box{-1, 1, -1, 1});
            runner.record(k, 1, check_retract(rng, m1, m2, r, s));
            runner.record(k, 2, check_monotone(m1, r, s));
            runner.record(k, 3, check_involution_equivariance(m1, r, s));
        });
        report.sections.push_back(runner.finish());
    }

    {  // adjunction smoke
        SectionRunner runner("adjunction");
        const SmokeReport smoke =
            quillen_adjunction_smoke(config.adjunction_samples, config.seed * 99991ull);
        runner.section.checked = smoke.samples;
        if (!smoke.ok) runner.section.failures.push_back(smoke.detail);
        report.sections.push_back(runner.finish());
    }

    for (const SuiteSection& s : report.sections)
        if (!s.failures.empty()) report.ok = false;
    return report;
}

nlohmann::json suite_report_to_json(const SuiteReport& report) {
    nlohmann::json doc;
    doc["schema"] = "mspectra-report/1";
    doc["command"] = "suite";
    doc["seed"] = report.config.seed;
    doc["samples"] = {{"oracle", report.config.oracle_samples},
                      {"rlp", report.config.rlp_samples},
                      {"axioms", report.config.axiom_samples},
                      {"adjunction", report.config.adjunction_samples}};
    nlohmann::json sections = nlohmann::json::object();
    for (const SuiteSection& s : report.sections) {
        nlohmann::json sec;
        sec["checked"] = s.checked;
        sec["failures"] = s.failures;
        sections[s.name] = std::move(sec);
    }
    doc["sections"] = std::move(sections);
    doc["pass"] = report.ok;
    return doc;
}

}  // namespace mspectra
