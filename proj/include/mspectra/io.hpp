#pragma once

#include <string>

#include <json.hpp>

#include "mspectra/multicomplex.hpp"

namespace mspectra {

using Json = nlohmann::json;

/// Multicomplex document: {"N":..., "field":"Q"|"Fp:p",
/// "modules":{"p,q":rank}, "diffs":[{"i":..,"from":[p,q],"matrix":[[..]]}],
/// optional "truncated":true and "window":[pmin,pmax,qmin,qmax]}.
/// Printing is canonical: parsing a printed document and reprinting it is
/// byte-identical.
Json multicomplex_to_json(const Multicomplex& a);
Multicomplex multicomplex_from_json(const Json& doc);

/// Morphism document: {"source":doc|path, "target":doc|path,
/// "blocks":{"p,q":[[..]]}}; paths are resolved against base_dir.
Json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const Json& doc, const std::string& base_dir = ".");

std::string canonical_dump(const Json& doc);

Multicomplex load_multicomplex(const std::string& path);
Morphism load_morphism(const std::string& path);
/// Loads either document kind; morphisms are detected by a "blocks" field.
bool file_is_morphism(const std::string& path);

void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace mspectra
