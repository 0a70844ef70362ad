#include "wsm/document.hpp"

#include <cctype>

#include "wsm/error.hpp"

namespace wsm {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what, const std::string& code = "bad-document") {
  throw Error(code, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::int64_t integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t index(const Json& v, const std::string& where) {
  const std::int64_t x = integer(v, where);
  if (x < 0) fail(where, "expected a non-negative index");
  return static_cast<std::size_t>(x);
}

std::vector<std::int64_t> integers(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Rational fraction(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "weights are written as fraction strings", "bad-fraction");
  const std::string s = v.get<std::string>();
  std::size_t i = 0;
  auto digits = [&] {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i > start;
  };
  bool ok = digits();
  if (ok && i < s.size() && s[i] == '/') {
    ++i;
    ok = digits();
  }
  if (!ok || i != s.size()) fail(where, "'" + s + "' is not a fraction p/q", "bad-fraction");
  try {
    return Rational::parse(s);
  } catch (const Error& e) {
    fail(where, e.what(), "bad-fraction");
  }
}

std::string at(const std::string& list, std::size_t i) { return list + "[" + std::to_string(i) + "]"; }

}  // namespace

GraphDocument parse_document(const Json& doc) {
  if (!doc.is_object()) fail("document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "profile" && key != "vertices" && key != "flags" && key != "meta") fail("document", "unknown key \"" + key + "\"");
  }
  GraphDocument out;
  WGraph& g = out.graph;
  const Json& profile = field(doc, "profile", "document");
  const std::int64_t dim = integer(field(profile, "dim_v", "profile"), "profile.dim_v");
  if (dim < 0) fail("profile.dim_v", "must be non-negative");
  g.profile = TargetProfile{static_cast<int>(dim), integers(field(profile, "kappa", "profile"), "profile.kappa")};

  const Json& vertices = field(doc, "vertices", "document");
  if (!vertices.is_array()) fail("vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = at("vertices", i);
    const Json& v = vertices[i];
    if (index(field(v, "id", where), where + ".id") != i) fail(where + ".id", "ids must be 0.." + std::to_string(vertices.size() - 1) + " in order");
    const std::int64_t genus = integer(field(v, "genus", where), where + ".genus");
    if (genus < 0) fail(where + ".genus", "must be non-negative");
    auto beta = integers(field(v, "beta", where), where + ".beta");
    if (beta.size() != g.profile.rank()) fail(where + ".beta", "length differs from profile.kappa", "rank");
    for (auto c : beta) {
      if (c < 0) fail(where + ".beta", "classes are effective", "bad-class");
    }
    g.add_vertex(static_cast<int>(genus), CurveClass(std::move(beta)));
  }

  const Json& flags = field(doc, "flags", "document");
  if (!flags.is_array()) fail("flags", "expected an array");
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const std::string where = at("flags", i);
    const Json& f = flags[i];
    if (index(field(f, "id", where), where + ".id") != i) fail(where + ".id", "ids must be 0.." + std::to_string(flags.size() - 1) + " in order");
    Flag flag;
    flag.vertex = index(field(f, "vertex", where), where + ".vertex");
    if (flag.vertex >= g.vertices.size()) fail(where + ".vertex", "no vertex " + std::to_string(flag.vertex), "dangling-vertex");
    flag.weight = fraction(field(f, "weight", where), where + ".weight");
    const Json& partner = field(f, "partner", where);
    if (partner.is_null()) {
      flag.partner = i;
    } else {
      flag.partner = index(partner, where + ".partner");
      if (flag.partner >= flags.size()) {
        fail(where + ".partner", "flag " + std::to_string(i) + " references missing flag " + std::to_string(flag.partner),
             "dangling-partner");
      }
      if (flag.partner == i) fail(where + ".partner", "a tail is written with partner null");
    }
    if (auto it = f.find("label"); it != f.end()) {
      if (!it->is_string()) fail(where + ".label", "expected a string");
      flag.label = it->get<std::string>();
    }
    g.flags.push_back(std::move(flag));
  }
  for (std::size_t i = 0; i < g.flags.size(); ++i) {
    if (g.flags[g.flags[i].partner].partner != i) {
      fail(at("flags", i) + ".partner", "flag " + std::to_string(g.flags[i].partner) + " does not point back to flag " + std::to_string(i),
           "involution");
    }
  }
  for (const Violation& v : validate(g)) fail("graph", v.message, v.code);
  if (auto it = doc.find("meta"); it != doc.end()) out.meta = *it;
  return out;
}

WGraph parse_graph(const Json& doc) { return parse_document(doc).graph; }

Json serialize_graph(const WGraph& g, const std::optional<Json>& meta) {
  Json doc = Json::object();
  doc["profile"] = {{"dim_v", g.profile.dim_v}, {"kappa", g.profile.kappa}};
  Json vertices = Json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    vertices.push_back({{"id", v}, {"genus", g.vertices[v].genus}, {"beta", g.vertices[v].cls.coords()}});
  }
  doc["vertices"] = std::move(vertices);
  Json flags = Json::array();
  for (std::size_t f = 0; f < g.flags.size(); ++f) {
    Json item = {{"id", f}, {"vertex", g.flags[f].vertex}, {"weight", g.flags[f].weight.str()}};
    item["partner"] = g.is_tail(f) ? Json(nullptr) : Json(g.partner(f));
    if (!g.flags[f].label.empty()) item["label"] = g.flags[f].label;
    flags.push_back(std::move(item));
  }
  doc["flags"] = std::move(flags);
  if (meta) doc["meta"] = *meta;
  return doc;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("bad-json", e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Isogeny parse_isogeny(const Json& doc, const std::optional<WGraph>& default_target) {
  Isogeny phi;
  phi.source = parse_graph(field(doc, "source", "isogeny"));
  if (auto it = doc.find("target"); it != doc.end()) {
    phi.target = parse_graph(*it);
  } else if (default_target) {
    phi.target = *default_target;
  } else {
    fail("isogeny", "missing key \"target\"");
  }
  for (auto x : integers(field(doc, "flag_map", "isogeny"), "isogeny.flag_map")) {
    if (x < 0) fail("isogeny.flag_map", "negative index");
    phi.flag_inj.push_back(static_cast<std::size_t>(x));
  }
  for (auto x : integers(field(doc, "vertex_map", "isogeny"), "isogeny.vertex_map")) {
    if (x < 0) fail("isogeny.vertex_map", "negative index");
    phi.vertex_surj.push_back(static_cast<std::size_t>(x));
  }
  return phi;
}

Json serialize_isogeny(const Isogeny& phi) {
  return {{"source", serialize_graph(phi.source)},
          {"target", serialize_graph(phi.target)},
          {"flag_map", phi.flag_inj},
          {"vertex_map", phi.vertex_surj}};
}

Json serialize_comb(const CombinatorialMorphism& m) {
  Json xi = Json::array();
  for (const auto& row : m.xi) xi.push_back(row);
  return {{"source", serialize_graph(m.source)},
          {"target", serialize_graph(m.target)},
          {"flag_map", m.flag_map},
          {"vertex_map", m.vertex_map},
          {"xi", xi}};
}

}  // namespace wsm
