#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mspectra/adjunction.hpp"
#include "mspectra/cone_module.hpp"
#include "mspectra/io.hpp"
#include "mspectra/suite.hpp"

namespace py = pybind11;
using namespace mspectra;

namespace {

struct PyMulticomplex {
    McPtr ptr;
};

struct PyMorphism {
    std::shared_ptr<Morphism> ptr;
};

PyMulticomplex mc_from_json(const std::string& text) {
    return PyMulticomplex{std::make_shared<const Multicomplex>(
        multicomplex_from_json(Json::parse(text)))};
}

std::map<std::pair<int, int>, int> dims_to_py(const std::map<Bidegree, int>& dims) {
    std::map<std::pair<int, int>, int> out;
    for (auto& [at, d] : dims) out[{at.p, at.q}] = d;
    return out;
}

std::vector<std::string> verdict_certs(const VerdictPart& v) {
    std::vector<std::string> out;
    for (const Certificate& c : v.certificates)
        out.push_back(std::string(c.side == '2' ? "''E_" : "'E_") + std::to_string(c.page) +
                      " at (" + c.at.to_string() + "): " + c.what);
    return out;
}

}  // namespace

PYBIND11_MODULE(mspectra, m) {
    m.doc() = "exact spectral sequences and model-structure checks for N-multicomplexes";

    py::register_exception<InputError>(m, "InputError");

    py::class_<PyMulticomplex>(m, "Multicomplex")
        .def_static("from_json", &mc_from_json, py::arg("text"))
        .def_static("load", [](const std::string& path) {
            return PyMulticomplex{std::make_shared<const Multicomplex>(load_multicomplex(path))};
        })
        .def("to_json", [](const PyMulticomplex& a) { return canonical_dump(multicomplex_to_json(*a.ptr)); })
        .def_property_readonly("N", [](const PyMulticomplex& a) { return a.ptr->n(); })
        .def_property_readonly("field", [](const PyMulticomplex& a) { return a.ptr->field().to_string(); })
        .def("rank_at", [](const PyMulticomplex& a, int p, int q) { return a.ptr->rank_at({p, q}); })
        .def("support", [](const PyMulticomplex& a) {
            std::map<std::pair<int, int>, int> out;
            for (auto& [at, rk] : a.ptr->support()) out[{at.p, at.q}] = rk;
            return out;
        })
        .def("validate", [](const PyMulticomplex& a) {
            std::vector<std::string> out;
            for (const auto& v : a.ptr->validate())
                out.push_back("relation l=" + std::to_string(v.l) + " fails at (" +
                              v.at.to_string() + ")");
            return out;
        })
        .def("is_valid", [](const PyMulticomplex& a) { return a.ptr->is_valid(); })
        .def("involve", [](const PyMulticomplex& a) {
            return PyMulticomplex{std::make_shared<const Multicomplex>(involve(*a.ptr))};
        })
        .def("direct_sum", [](const PyMulticomplex& a, const PyMulticomplex& b) {
            return PyMulticomplex{std::make_shared<const Multicomplex>(direct_sum(*a.ptr, *b.ptr))};
        });

    py::class_<PyMorphism>(m, "Morphism")
        .def_static("from_json", [](const std::string& text) {
            return PyMorphism{std::make_shared<Morphism>(morphism_from_json(Json::parse(text)))};
        })
        .def_static("load", [](const std::string& path) {
            return PyMorphism{std::make_shared<Morphism>(load_morphism(path))};
        })
        .def("to_json", [](const PyMorphism& f) { return canonical_dump(morphism_to_json(*f.ptr)); })
        .def_property_readonly("source", [](const PyMorphism& f) { return PyMulticomplex{f.ptr->source_ptr()}; })
        .def_property_readonly("target", [](const PyMorphism& f) { return PyMulticomplex{f.ptr->target_ptr()}; })
        .def("is_strict", [](const PyMorphism& f) { return f.ptr->is_strict(); })
        .def("validate", [](const PyMorphism& f) {
            std::vector<std::string> out;
            for (const auto& v : f.ptr->validate())
                out.push_back("strictness fails for d_" + std::to_string(v.i) + " at (" +
                              v.at.to_string() + ")");
            return out;
        });

    m.def("max_alphabet", &max_alphabet);
    m.def("set_max_alphabet", &set_max_alphabet, py::arg("n"));

    m.def("involve", [](const PyMorphism& f) {
        return PyMorphism{std::make_shared<Morphism>(involve(*f.ptr))};
    }, py::arg("f"), "involution image of a morphism");

    m.def("basis", [](int n, int p, int q) {
        std::vector<std::string> out;
        for (const Word& w : pattern_basis(n, {p, q})) out.push_back(word_to_string(w));
        return out;
    }, py::arg("N"), py::arg("p"), py::arg("q"),
        "normal-form basis words of the letter algebra at one bidegree");

    m.def("confluence_check", [](int n, int max_len) {
        std::vector<std::string> out;
        for (const auto& fail : confluence_check(n, max_len))
            out.push_back(word_to_string(fail.overlap));
        return out;
    }, py::arg("N"), py::arg("max_len") = 3);

    m.def("pages", [](const PyMulticomplex& a, const std::string& side, int r) {
        return dims_to_py(page_table(a.ptr, side == "second" ? '2' : '1', r).dims);
    }, py::arg("a"), py::arg("side"), py::arg("r"), "nonzero page dimensions");

    m.def("classical_pages", [](const PyMulticomplex& a, int r) {
        ClassicalOracle oracle(a.ptr);
        return dims_to_py(oracle.page_dims(r));
    }, py::arg("a"), py::arg("r"));

    m.def("is_weak_equivalence", [](const PyMorphism& f, int r, int s) {
        VerdictPart v = MorphismAnalyzer(*f.ptr).weak_equivalence(r, s);
        return py::make_tuple(v.ok, verdict_certs(v));
    }, py::arg("f"), py::arg("r"), py::arg("s"));

    m.def("is_fibration", [](const PyMorphism& f, int r, int s) {
        VerdictPart v = MorphismAnalyzer(*f.ptr).fibration(r, s);
        return py::make_tuple(v.ok, verdict_certs(v));
    }, py::arg("f"), py::arg("r"), py::arg("s"));

    m.def("rlp_crosscheck", [](const PyMorphism& f, int r, int s) {
        MorphismAnalyzer an(*f.ptr);
        const auto acyclic = an.acyclic_fibration_crosscheck(r, s);
        const auto fib = an.fibration_crosscheck(r, s);
        py::dict out;
        out["rlp_I"] = acyclic.rlp_route;
        out["rlp_J"] = fib.rlp_route;
        out["acyclic_fibration"] = acyclic.class_route;
        out["fibration"] = fib.class_route;
        out["agree"] = acyclic.agree && fib.agree;
        return out;
    }, py::arg("f"), py::arg("r"), py::arg("s"));

    m.def("zw_window", [](int n, const std::string& k, int p, int q, int pmin, int pmax, int qmin,
                          int qmax, const std::string& field) {
        const Field f = Field::parse(field);
        const Box window{pmin, pmax, qmin, qmax};
        int stage = 0;
        if (k != "inf") {
            try {
                std::size_t used = 0;
                stage = std::stoi(k, &used);
                if (used != k.size()) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw InputError("bad stage: " + k + " (expected an integer or \"inf\")");
            }
        }
        ConeModule cone = k == "inf" ? ConeModule::zw_infinity(n, f, {p, q}, window.pmin)
                                     : ConeModule::zw(n, f, stage, {p, q});
        return PyMulticomplex{cone.materialize_box(window).object};
    }, py::arg("N"), py::arg("k"), py::arg("p"), py::arg("q"), py::arg("pmin"), py::arg("pmax"),
        py::arg("qmin"), py::arg("qmax"), py::arg("field") = "Q");

    m.def("adjoint_j", [](const PyMulticomplex& a) {
        return PyMulticomplex{std::make_shared<const Multicomplex>(adjoint_j(*a.ptr))};
    });
    m.def("adjoint_q", [](const PyMulticomplex& a) {
        return PyMulticomplex{adjoint_q(*a.ptr).bicomplex};
    });
    m.def("adjunction_unit", [](const PyMulticomplex& a) {
        return PyMorphism{std::make_shared<Morphism>(adjunction_unit(*a.ptr))};
    });
    m.def("counit_is_identity", [](const PyMulticomplex& a) { return counit_is_identity(*a.ptr); });

    m.def("run_suite", [](std::uint64_t seed, int samples, int workers) {
        SuiteConfig config;
        config.seed = seed;
        config.oracle_samples = std::max(1, samples / 2);
        config.rlp_samples = std::max(1, samples / 4);
        config.axiom_samples = std::max(1, samples / 2);
        config.adjunction_samples = samples;
        config.workers = workers;
        return suite_report_to_json(run_suite(config)).dump(2);
    }, py::arg("seed") = 1, py::arg("samples") = 8, py::arg("workers") = 2);
}
