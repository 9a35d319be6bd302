#include <iostream>

#include <CLI11.hpp>

#include "mspectra/adjunction.hpp"
#include "mspectra/cone_module.hpp"
#include "mspectra/io.hpp"
#include "mspectra/suite.hpp"

namespace {

using namespace mspectra;

constexpr const char* kSchema = "mspectra-report/1";

Box parse_window(const std::string& text) {
    // pmin:pmax,qmin:qmax
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("window must be pmin:pmax,qmin:qmax");
    auto parse_range = [](const std::string& part) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw InputError("window must be pmin:pmax,qmin:qmax");
        try {
            return std::pair<int, int>{std::stoi(part.substr(0, colon)),
                                       std::stoi(part.substr(colon + 1))};
        } catch (const std::exception&) {
            throw InputError("bad window bound in: " + part);
        }
    };
    const auto [pmin, pmax] = parse_range(text.substr(0, comma));
    const auto [qmin, qmax] = parse_range(text.substr(comma + 1));
    Box b{pmin, pmax, qmin, qmax};
    if (b.empty()) throw InputError("empty window");
    return b;
}

Json certificates_to_json(const std::vector<Certificate>& certs) {
    Json out = Json::array();
    for (const Certificate& c : certs) {
        Json e;
        e["side"] = c.side == '2' ? "second" : "first";
        e["page"] = c.page;
        e["at"] = Json::array({c.at.p, c.at.q});
        e["what"] = c.what;
        out.push_back(std::move(e));
    }
    return out;
}

void print_certificates(const std::vector<Certificate>& certs) {
    for (const Certificate& c : certs)
        std::cout << "  " << (c.side == '2' ? "''E_" : "'E_") << c.page << " at (" << c.at.p << ","
                  << c.at.q << "): " << c.what << "\n";
}

int cmd_validate(const std::string& file) {
    if (file_is_morphism(file)) {
        const Morphism f = load_morphism(file);
        const auto source_bad = f.source().validate();
        const auto target_bad = f.target().validate();
        const auto strictness = f.validate();
        if (source_bad.empty() && target_bad.empty() && strictness.empty()) {
            std::cout << "valid strict morphism\n";
            return 0;
        }
        for (const auto& v : source_bad)
            std::cout << "source relation l=" << v.l << " fails at (" << v.at.p << "," << v.at.q
                      << ")\n";
        for (const auto& v : target_bad)
            std::cout << "target relation l=" << v.l << " fails at (" << v.at.p << "," << v.at.q
                      << ")\n";
        for (const auto& v : strictness)
            std::cout << "strictness fails for d_" << v.i << " at (" << v.at.p << "," << v.at.q
                      << ")\n";
        return 1;
    }
    const Multicomplex a = load_multicomplex(file);
    const auto bad = a.validate();
    if (bad.empty()) {
        std::cout << "valid N=" << a.n() << " multicomplex, " << a.support().size()
                  << " bidegrees, total dimension " << a.total_dim() << "\n";
        return 0;
    }
    for (const auto& v : bad)
        std::cout << "relation l=" << v.l << " fails at (" << v.at.p << "," << v.at.q << ")\n";
    return 1;
}

int cmd_basis(int n, int p, int q) {
    for (const Word& w : pattern_basis(n, Bidegree{p, q})) std::cout << word_to_string(w) << "\n";
    return 0;
}

int parse_stage(const std::string& text) {
    try {
        std::size_t used = 0;
        const int k = std::stoi(text, &used);
        if (used != text.size()) throw InputError("bad stage: " + text);
        return k;
    } catch (const std::exception&) {
        throw InputError("bad stage: " + text + " (expected an integer or \"inf\")");
    }
}

int cmd_zw(int n, const std::string& k_text, int p, int q, const std::string& window_text,
           const std::string& field_text, const std::string& out_path) {
    const Field f = Field::parse(field_text);
    const Box window = parse_window(window_text);
    ConeModule cone = k_text == "inf"
                          ? ConeModule::zw_infinity(n, f, Bidegree{p, q}, window.pmin)
                          : ConeModule::zw(n, f, parse_stage(k_text), Bidegree{p, q});
    const MaterializedCone mat = cone.materialize_box(window);
    const std::string text = canonical_dump(multicomplex_to_json(*mat.object));
    if (out_path.empty())
        std::cout << text;
    else
        save_text(out_path, text);
    return 0;
}

int cmd_pages(const std::string& file, const std::string& side_text, int r, bool witnesses,
              bool as_json, const std::string& window_text) {
    auto a = std::make_shared<const Multicomplex>(load_multicomplex(file));
    const char side = side_text == "second" ? '2' : '1';
    std::optional<Box> region;
    if (!window_text.empty()) region = parse_window(window_text);
    const PageTable table = page_table(a, side, r, region);
    Json reps = Json::object();
    if (witnesses) {
        McPtr working = a;
        if (side == '2') working = std::make_shared<const Multicomplex>(involve(*a));
        SpectralContext ctx(working);
        for (auto& [label, dim] : table.dims) {
            (void)dim;
            const Bidegree x = side == '2' ? involution_bidegree(a->n(), label) : label;
            const QuotientPresentation& pres = ctx.page(r, x);
            Json vecs = Json::array();
            for (std::size_t i = 0; i < pres.dim(); ++i) {
                Json v = Json::array();
                const Vec row = pres.representatives().row(i);
                for (const Scalar& s : row) v.push_back(a->field().scalar_to_string(s));
                vecs.push_back(std::move(v));
            }
            reps[label.to_string()] = std::move(vecs);
        }
    }
    if (as_json) {
        Json doc;
        doc["schema"] = kSchema;
        doc["command"] = "pages";
        doc["side"] = side_text;
        doc["r"] = r;
        Json dims = Json::object();
        for (auto& [at, d] : table.dims) dims[at.to_string()] = d;
        doc["dims"] = std::move(dims);
        if (witnesses) doc["witnesses"] = std::move(reps);
        std::cout << canonical_dump(doc);
    } else {
        std::cout << "p\tq\tdim\n";
        for (auto& [at, d] : table.dims) std::cout << at.p << "\t" << at.q << "\t" << d << "\n";
        if (witnesses)
            for (auto& [key, vecs] : reps.items())
                std::cout << "witnesses at (" << key << "): " << vecs.dump() << "\n";
    }
    return 0;
}

int verdict_command(const std::string& command, const std::string& file, int r, int s,
                    bool crosscheck, bool certificates, bool as_json) {
    if (r < 0 || s < 0) throw InputError("the class indices r and s must be non-negative");
    const Morphism f = load_morphism(file);
    if (!f.source().is_valid() || !f.target().is_valid() || !f.is_strict())
        throw InputError("input must be a strict morphism between valid multicomplexes");
    MorphismAnalyzer an(f);

    bool verdict = false;
    std::vector<Certificate> certs;
    Json extra = Json::object();
    if (command == "we") {
        VerdictPart v = an.weak_equivalence(r, s);
        verdict = v.ok;
        certs = std::move(v.certificates);
    } else if (command == "fib") {
        VerdictPart v = an.fibration(r, s);
        verdict = v.ok;
        certs = std::move(v.certificates);
    } else {
        if (crosscheck) {
            const auto acyclic = an.acyclic_fibration_crosscheck(r, s);
            const auto fib = an.fibration_crosscheck(r, s);
            verdict = acyclic.agree && fib.agree;
            extra["acyclic_agrees"] = acyclic.agree;
            extra["fibration_agrees"] = fib.agree;
            extra["rlp_I"] = acyclic.rlp_route;
            extra["rlp_J"] = fib.rlp_route;
        } else {
            const auto sweep = an.rlp_against_generating_cofibrations(r, s);
            verdict = sweep.ok;
            extra["checked"] = sweep.checked;
            if (sweep.failed) extra["failed_against"] = sweep.failed->to_string();
        }
    }

    if (as_json) {
        Json doc;
        doc["schema"] = kSchema;
        doc["command"] = command;
        doc["r"] = r;
        doc["s"] = s;
        doc["verdict"] = verdict;
        if (certificates) doc["certificates"] = certificates_to_json(certs);
        for (auto& [k, v] : extra.items()) doc[k] = v;
        std::cout << canonical_dump(doc);
    } else {
        std::cout << command << "(" << r << "," << s << "): " << (verdict ? "yes" : "no") << "\n";
        for (auto& [k, v] : extra.items()) std::cout << "  " << k << ": " << v.dump() << "\n";
        if (certificates) print_certificates(certs);
    }
    return verdict ? 0 : 1;
}

int cmd_oracle(const std::string& file, int rmax) {
    auto a = std::make_shared<const Multicomplex>(load_multicomplex(file));
    if (!a->is_valid()) throw InputError("input multicomplex is not valid");
    const auto failure = check_oracle_instance(a, rmax);
    if (failure) {
        std::cout << *failure << "\n";
        return 1;
    }
    std::cout << "witness pages match the classical construction for r <= " << rmax << "\n";
    return 0;
}

int cmd_adjoint(const std::string& what, const std::string& file, const std::string& out_path) {
    Json out;
    if (what == "j") {
        out = multicomplex_to_json(adjoint_j(load_multicomplex(file)));
    } else if (what == "q") {
        out = multicomplex_to_json(*adjoint_q(load_multicomplex(file)).bicomplex);
    } else if (what == "unit") {
        out = morphism_to_json(adjunction_unit(load_multicomplex(file)));
    } else {
        throw InputError("adjoint expects j, q, unit or smoke");
    }
    const std::string text = canonical_dump(out);
    if (out_path.empty())
        std::cout << text;
    else
        save_text(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral sequences and model-structure checks for N-multicomplexes"};
    app.require_subcommand(1);

    std::string file, out_path, side = "first", window_text, field_text = "Q", k_text = "0";
    int n = 2, p = 0, q = 0, r = 0, s = 0, samples = 20, rmax = 4, workers = 2;
    std::uint64_t seed = 1;
    bool witnesses = false, as_json = false, crosscheck = false, certificates = false;

    CLI::App* validate = app.add_subcommand("validate", "check the defining relations / strictness");
    validate->add_option("file", file)->required();

    CLI::App* basis = app.add_subcommand("basis", "basis words of the letter algebra at a bidegree");
    basis->add_option("--N", n)->required();
    basis->add_option("--p", p)->required();
    basis->add_option("--q", q)->required();

    CLI::App* zw = app.add_subcommand("zw", "export a window of a witness-cycle representing object");
    zw->add_option("--N", n)->required();
    zw->add_option("--k", k_text)->required();
    zw->add_option("--p", p)->required();
    zw->add_option("--q", q)->required();
    zw->add_option("--window", window_text)->required();
    zw->add_option("--field", field_text);
    zw->add_option("-o,--out", out_path);

    CLI::App* pages = app.add_subcommand("pages", "page dimension table of a multicomplex");
    pages->add_option("--side", side)->check(CLI::IsMember({"first", "second"}));
    pages->add_option("-r", r)->required();
    pages->add_option("file", file)->required();
    pages->add_flag("--witnesses", witnesses);
    pages->add_flag("--json", as_json);
    pages->add_option("--window", window_text);

    CLI::App* we = app.add_subcommand("we", "weak-equivalence class membership of a morphism");
    CLI::App* fib = app.add_subcommand("fib", "fibration class membership of a morphism");
    CLI::App* rlp = app.add_subcommand("rlp", "lifting properties against the generating maps");
    for (CLI::App* cmd : {we, fib, rlp}) {
        cmd->add_option("-r", r)->required();
        cmd->add_option("-s", s)->required();
        cmd->add_option("file", file)->required();
        cmd->add_flag("--certificates", certificates);
        cmd->add_flag("--json", as_json);
    }
    rlp->add_flag("--crosscheck", crosscheck);

    CLI::App* oracle = app.add_subcommand("oracle", "compare witness pages with the classical ones");
    oracle->add_option("file", file)->required();
    oracle->add_option("-r", rmax);

    CLI::App* adjoint = app.add_subcommand("adjoint", "bicomplex / 4-multicomplex comparison tools");
    adjoint->require_subcommand(1);
    CLI::App* adj_j = adjoint->add_subcommand("j", "bicomplex to 4-multicomplex");
    CLI::App* adj_q = adjoint->add_subcommand("q", "4-multicomplex to bicomplex");
    CLI::App* adj_unit = adjoint->add_subcommand("unit", "unit morphism L -> jq(L)");
    for (CLI::App* cmd : {adj_j, adj_q, adj_unit}) {
        cmd->add_option("file", file)->required();
        cmd->add_option("-o,--out", out_path);
    }
    CLI::App* adj_smoke = adjoint->add_subcommand("smoke", "sampled Quillen-adjunction checks");
    adj_smoke->add_option("-r", r)->required();
    adj_smoke->add_option("-s", s)->required();
    adj_smoke->add_option("--samples", samples);
    adj_smoke->add_option("--seed", seed);
    adj_smoke->add_flag("--json", as_json);

    CLI::App* suite = app.add_subcommand("suite", "randomized cross-check matrix");
    suite->add_option("--seed", seed);
    suite->add_option("--samples", samples);
    suite->add_option("--workers", workers);
    suite->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // malformed flags are input errors
    }

    try {
        if (validate->parsed()) return cmd_validate(file);
        if (basis->parsed()) return cmd_basis(n, p, q);
        if (zw->parsed()) return cmd_zw(n, k_text, p, q, window_text, field_text, out_path);
        if (pages->parsed()) return cmd_pages(file, side, r, witnesses, as_json, window_text);
        if (we->parsed()) return verdict_command("we", file, r, s, false, certificates, as_json);
        if (fib->parsed()) return verdict_command("fib", file, r, s, false, certificates, as_json);
        if (rlp->parsed())
            return verdict_command("rlp", file, r, s, crosscheck, certificates, as_json);
        if (oracle->parsed()) return cmd_oracle(file, rmax);
        if (adjoint->parsed()) {
            if (adj_smoke->parsed()) {
                if (r != 1 || s != 1)
                    throw InputError("the adjunction smoke test targets the (1,1) structure");
                const SmokeReport report = quillen_adjunction_smoke(samples, seed);
                if (as_json) {
                    Json doc;
                    doc["schema"] = kSchema;
                    doc["command"] = "adjoint smoke";
                    doc["seed"] = seed;
                    doc["samples"] = report.samples;
                    doc["surjective_checked"] = report.surjective_checked;
                    doc["equivalence_checked"] = report.equivalence_checked;
                    doc["pass"] = report.ok;
                    if (!report.ok) doc["detail"] = report.detail;
                    std::cout << canonical_dump(doc);
                } else {
                    std::cout << (report.ok ? "ok" : "FAILED: " + report.detail) << " ("
                              << report.surjective_checked << " surjections, "
                              << report.equivalence_checked << " equivalences)\n";
                }
                return report.ok ? 0 : 1;
            }
            if (adj_j->parsed()) return cmd_adjoint("j", file, out_path);
            if (adj_q->parsed()) return cmd_adjoint("q", file, out_path);
            return cmd_adjoint("unit", file, out_path);
        }
        if (suite->parsed()) {
            SuiteConfig config;
            config.seed = seed;
            config.workers = workers;
            config.oracle_samples = std::max(1, samples / 2);
            config.rlp_samples = std::max(1, samples / 4);
            config.axiom_samples = std::max(1, samples / 2);
            config.adjunction_samples = samples;
            const SuiteReport report = run_suite(config);
            if (as_json) {
                std::cout << canonical_dump(suite_report_to_json(report));
            } else {
                for (const SuiteSection& sec : report.sections) {
                    std::cout << sec.name << ": " << sec.checked << " checks, "
                              << sec.failures.size() << " failures\n";
                    for (const std::string& msg : sec.failures) std::cout << "  " << msg << "\n";
                }
                std::cout << (report.ok ? "PASS" : "FAIL") << "\n";
            }
            return report.ok ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
