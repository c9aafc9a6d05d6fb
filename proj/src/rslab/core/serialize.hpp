#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rslab/core/signature.hpp"
#include "rslab/core/structure.hpp"

namespace rslab {

// Signature file:
//   {"independence_mode": bool, "relations": [{"name": str, "arity": int,
//    "alpha": "0.55" | {"num": 11, "den": 20}, "gamma": 1.0}, ...]}
SignaturePtr parse_signature(std::string_view text);
SignaturePtr signature_from_json(const nlohmann::json& j);
nlohmann::ordered_json signature_to_json(const Signature& sig);

// Structure file: {"n": int, "edges": {relname: [[v, ...], ...]}}
Structure parse_structure(std::string_view text, SignaturePtr sig);
Structure structure_from_json(const nlohmann::json& j, SignaturePtr sig);

/// Canonical form: relations in signature order, hyperedges sorted
/// lexicographically, vertices ascending within a hyperedge.
nlohmann::ordered_json structure_to_json(const Structure& s);
std::string serialize_structure(const Structure& s);

VertexSet vertex_set_from_json(const nlohmann::json& j, Vertex universe);

}  // namespace rslab
