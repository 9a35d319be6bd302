#include "mspectra/io.hpp"

#include <fstream>
#include <sstream>

namespace mspectra {

namespace {

std::string bidegree_key(Bidegree b) { return b.to_string(); }

Bidegree bidegree_from_key(const std::string& key) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw InputError("bad bidegree key: " + key);
    try {
        return Bidegree{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InputError("bad bidegree key: " + key);
    }
}

Bidegree bidegree_from_array(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw InputError("bad bidegree array");
    return Bidegree{j[0].get<int>(), j[1].get<int>()};
}

Json matrix_to_json(const Field& f, const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(f.scalar_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Field& f, const Json& j, std::size_t rows, std::size_t cols,
                        const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw InputError("matrix at " + where + ": expected " + std::to_string(rows) + " rows");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw InputError("matrix at " + where + ": row " + std::to_string(i) + " needs " +
                             std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_string())
                throw InputError("matrix at " + where + ": entries must be scalar strings");
            m.at(i, c) = f.parse_scalar(row[c].get<std::string>());
        }
    }
    return m;
}

}  // namespace

Json multicomplex_to_json(const Multicomplex& a) {
    Json doc;
    doc["N"] = a.n();
    doc["field"] = a.field().to_string();
    Json modules = Json::object();
    for (auto& [at, rk] : a.support()) modules[bidegree_key(at)] = rk;
    doc["modules"] = std::move(modules);
    Json diffs = Json::array();
    for (auto& [key, block] : a.diff_blocks()) {
        Json entry;
        entry["i"] = key.first;
        entry["from"] = Json::array({key.second.p, key.second.q});
        entry["matrix"] = matrix_to_json(a.field(), block);
        diffs.push_back(std::move(entry));
    }
    doc["diffs"] = std::move(diffs);
    if (a.truncated()) {
        doc["truncated"] = true;
        if (a.window()) {
            const Box& w = *a.window();
            doc["window"] = Json::array({w.pmin, w.pmax, w.qmin, w.qmax});
        }
    }
    return doc;
}

Multicomplex multicomplex_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("multicomplex document must be an object");
    if (!doc.contains("N") || !doc["N"].is_number_integer())
        throw InputError("multicomplex document needs integer field \"N\"");
    if (!doc.contains("field") || !doc["field"].is_string())
        throw InputError("multicomplex document needs string field \"field\"");
    const Field f = Field::parse(doc["field"].get<std::string>());
    Multicomplex a(doc["N"].get<int>(), f);
    if (doc.contains("modules")) {
        if (!doc["modules"].is_object()) throw InputError("\"modules\" must be an object");
        for (auto it = doc["modules"].begin(); it != doc["modules"].end(); ++it) {
            if (!it.value().is_number_integer() || it.value().get<int>() <= 0)
                throw InputError("module rank at " + it.key() + " must be a positive integer");
            a.set_rank(bidegree_from_key(it.key()), it.value().get<int>());
        }
    }
    if (doc.contains("diffs")) {
        if (!doc["diffs"].is_array()) throw InputError("\"diffs\" must be a list");
        for (const Json& entry : doc["diffs"]) {
            if (!entry.is_object() || !entry.contains("i") || !entry.contains("from") ||
                !entry.contains("matrix"))
                throw InputError("each diff needs fields i, from, matrix");
            const int i = entry["i"].get<int>();
            const Bidegree from = bidegree_from_array(entry["from"]);
            const Bidegree to = from + diff_degree(i);
            a.set_diff(i, from,
                       matrix_from_json(f, entry["matrix"], static_cast<std::size_t>(a.rank_at(to)),
                                        static_cast<std::size_t>(a.rank_at(from)),
                                        "d_" + std::to_string(i) + " from (" + from.to_string() +
                                            ")"));
        }
    }
    if (doc.contains("truncated") && doc["truncated"].get<bool>()) {
        std::optional<Box> window;
        if (doc.contains("window")) {
            const Json& w = doc["window"];
            if (!w.is_array() || w.size() != 4) throw InputError("\"window\" must be [pmin,pmax,qmin,qmax]");
            window = Box{w[0].get<int>(), w[1].get<int>(), w[2].get<int>(), w[3].get<int>()};
        }
        a.set_truncated(true, window);
    }
    return a;
}

Json morphism_to_json(const Morphism& f) {
    Json doc;
    doc["source"] = multicomplex_to_json(f.source());
    doc["target"] = multicomplex_to_json(f.target());
    Json blocks = Json::object();
    for (auto& [at, m] : f.blocks()) blocks[bidegree_key(at)] = matrix_to_json(f.source().field(), m);
    doc["blocks"] = std::move(blocks);
    return doc;
}

namespace {

Multicomplex end_from_json(const Json& j, const std::string& base_dir) {
    if (j.is_string()) {
        const std::string path = j.get<std::string>();
        const std::string full =
            path.empty() || path[0] == '/' ? path : base_dir + "/" + path;
        return load_multicomplex(full);
    }
    return multicomplex_from_json(j);
}

}  // namespace

Morphism morphism_from_json(const Json& doc, const std::string& base_dir) {
    if (!doc.is_object() || !doc.contains("source") || !doc.contains("target"))
        throw InputError("morphism document needs source and target");
    auto src = std::make_shared<const Multicomplex>(end_from_json(doc["source"], base_dir));
    auto dst = std::make_shared<const Multicomplex>(end_from_json(doc["target"], base_dir));
    if (src->field() != dst->field()) throw InputError("morphism endpoints over different fields");
    Morphism f(src, dst);
    if (doc.contains("blocks")) {
        if (!doc["blocks"].is_object()) throw InputError("\"blocks\" must be an object");
        for (auto it = doc["blocks"].begin(); it != doc["blocks"].end(); ++it) {
            const Bidegree at = bidegree_from_key(it.key());
            f.set_block(at, matrix_from_json(src->field(), it.value(),
                                             static_cast<std::size_t>(dst->rank_at(at)),
                                             static_cast<std::size_t>(src->rank_at(at)),
                                             "block (" + at.to_string() + ")"));
        }
    }
    return f;
}

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

namespace {

Json parse_file(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

Multicomplex load_multicomplex(const std::string& path) {
    return multicomplex_from_json(parse_file(path));
}

Morphism load_morphism(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return morphism_from_json(parse_file(path), dir);
}

bool file_is_morphism(const std::string& path) { return parse_file(path).contains("blocks"); }

}  // namespace mspectra
