#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "wsm/category.hpp"
#include "wsm/graph.hpp"

namespace wsm {

using Json = nlohmann::ordered_json;

struct GraphDocument {
  WGraph graph;
  std::optional<Json> meta;
};

/// Reads {"profile", "vertices", "flags", "meta"?}. Errors name the
/// offending entry, e.g. "flags[3].partner".
GraphDocument parse_document(const Json& doc);
WGraph parse_graph(const Json& doc);
Json serialize_graph(const WGraph& g, const std::optional<Json>& meta = std::nullopt);

/// Parses text; throws "bad-json" on syntax errors.
Json parse_json_text(const std::string& text);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& doc);

/// {"source": graph, "target": graph?, "flag_map": [...], "vertex_map": [...]}.
/// Without "target" the given default is used.
Isogeny parse_isogeny(const Json& doc, const std::optional<WGraph>& default_target = std::nullopt);
Json serialize_isogeny(const Isogeny& phi);

Json serialize_comb(const CombinatorialMorphism& m);

}  // namespace wsm
