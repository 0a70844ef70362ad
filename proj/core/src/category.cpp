#include "wsm/category.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "wsm/chambers.hpp"
#include "wsm/error.hpp"

namespace wsm {

namespace {

std::string num(std::size_t x) { return std::to_string(x); }

bool is_identity_shaped(const ClassMap& xi) { return xi.empty(); }

// Number of connected components of the subgraph on `members` using only
// the listed edges; returns (components, edges).
std::pair<std::size_t, std::size_t> subgraph_shape(const WGraph& g, const std::vector<std::size_t>& members,
                                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::map<std::size_t, std::size_t> parent;
  for (std::size_t v : members) parent[v] = v;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [f, h] : edges) {
    const auto a = find(g.vertex_of(f));
    const auto b = find(g.vertex_of(h));
    if (a != b) parent[a] = b;
  }
  std::set<std::size_t> roots;
  for (std::size_t v : members) roots.insert(find(v));
  return {roots.size(), edges.size()};
}

std::vector<std::size_t> inverse_injection(const std::vector<std::size_t>& inj, std::size_t size) {
  std::vector<std::size_t> inv(size, SIZE_MAX);
  for (std::size_t i = 0; i < inj.size(); ++i) {
    if (inj[i] < size) inv[inj[i]] = i;
  }
  return inv;
}

// Whether some chain of edges f_1..f_n of g runs from `from` (= f_1) to `to`
// (= the partner end of f_n) through class-zero vertices.
bool has_chain(const WGraph& g, std::size_t from, std::size_t to) {
  if (g.is_tail(from)) return false;
  std::vector<bool> seen(g.flags.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop_front();
    const std::size_t back = g.partner(f);
    if (back == to) return true;
    const std::size_t v = g.vertex_of(back);
    if (!g.vertices[v].cls.is_zero()) continue;
    for (std::size_t h : g.flags_at(v)) {
      if (h == back || g.is_tail(h) || seen[h]) continue;
      seen[h] = true;
      queue.push_back(h);
    }
  }
  return false;
}

}  // namespace

CurveClass apply(const ClassMap& xi, const CurveClass& c) {
  if (is_identity_shaped(xi)) return c;
  std::vector<std::int64_t> out(xi.size(), 0);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].size() != c.rank()) throw Error("rank-mismatch", "class map does not fit the class rank");
    for (std::size_t j = 0; j < c.rank(); ++j) out[i] += xi[i][j] * c[j];
  }
  return CurveClass(std::move(out));
}

ClassMap compose_maps(const ClassMap& first, const ClassMap& second) {
  if (is_identity_shaped(first)) return second;
  if (is_identity_shaped(second)) return first;
  const std::size_t inner = second.size();
  const std::size_t cols = second.front().size();
  ClassMap out(first.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].size() != inner) throw Error("rank-mismatch", "class maps do not compose");
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += first[i][k] * second[k][j];
    }
  }
  return out;
}

std::vector<Violation> validate_comb(const CombinatorialMorphism& m) {
  std::vector<Violation> out;
  const WGraph& s = m.source;
  const WGraph& t = m.target;
  if (m.flag_map.size() != s.flags.size() || m.vertex_map.size() != s.vertices.size()) {
    out.push_back({"comb-shape", "map sizes do not match the source graph"});
    return out;
  }
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    if (m.flag_map[f] >= t.flags.size()) out.push_back({"comb-shape", "flag " + num(f) + " maps outside the target"});
  }
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (m.vertex_map[v] >= t.vertices.size()) {
      out.push_back({"comb-shape", "vertex " + num(v) + " maps outside the target"});
    }
  }
  if (!out.empty()) return out;
  if (!is_identity_shaped(m.xi)) {
    bool ok = m.xi.size() == s.profile.rank();
    for (const auto& row : m.xi) {
      ok = ok && row.size() == t.profile.rank();
      for (auto x : row) ok = ok && x >= 0;
    }
    if (!ok) out.push_back({"comb-shape", "class map has the wrong shape or a negative entry"});
  } else if (s.profile.rank() != t.profile.rank()) {
    out.push_back({"comb-shape", "identity class map between different ranks"});
  }
  if (!out.empty()) return out;

  // (1) boundary maps commute
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    if (m.vertex_map[s.vertex_of(f)] != t.vertex_of(m.flag_map[f])) {
      out.push_back({"comb-1", "flag " + num(f) + " is not sent to a flag of the image vertex"});
    }
  }
  // (2) fibrewise weight inequality
  std::map<std::pair<std::size_t, std::size_t>, Rational> load;
  for (std::size_t f = 0; f < s.flags.size(); ++f) load[{s.vertex_of(f), m.flag_map[f]}] += s.flags[f].weight;
  for (const auto& [key, w] : load) {
    if (w > t.flags[key.second].weight) {
      out.push_back({"comb-2", "flags of vertex " + num(key.first) + " sent to flag " + num(key.second) +
                                   " weigh " + w.str() + " > " + t.flags[key.second].weight.str()});
    }
  }
  // (3) edges go to chains of edges through class-zero vertices
  for (const auto& [f, h] : s.edges()) {
    if (!has_chain(t, m.flag_map[f], m.flag_map[h])) {
      out.push_back({"comb-3", "edge {" + num(f) + "," + num(h) + "} is not sent to a chain of edges"});
    }
  }
  // (4) classes, (5) genera
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const auto& tv = t.vertices[m.vertex_map[v]];
    if (!(s.vertices[v].cls == apply(m.xi, tv.cls))) {
      out.push_back({"comb-4", "class of vertex " + num(v) + " differs from its image"});
    }
    if (s.vertices[v].genus != tv.genus) {
      out.push_back({"comb-5", "genus of vertex " + num(v) + " differs from its image"});
    }
  }
  return out;
}

std::vector<Violation> validate_contraction(const Contraction& c) {
  std::vector<Violation> out;
  const WGraph& t = c.source;
  const WGraph& s = c.target;
  if (c.flag_inj.size() != s.flags.size() || c.vertex_surj.size() != t.vertices.size()) {
    out.push_back({"contraction-shape", "map sizes do not match the graphs"});
    return out;
  }
  if (!(t.profile == s.profile)) out.push_back({"contraction-shape", "graphs over different targets"});
  std::vector<bool> hit(t.flags.size(), false), vhit(s.vertices.size(), false);
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    const std::size_t g = c.flag_inj[f];
    if (g >= t.flags.size()) {
      out.push_back({"contraction-shape", "flag " + num(f) + " maps outside the source"});
      return out;
    }
    if (hit[g]) out.push_back({"contraction-shape", "flag map is not injective"});
    hit[g] = true;
  }
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    if (c.vertex_surj[v] >= s.vertices.size()) {
      out.push_back({"contraction-shape", "vertex " + num(v) + " maps outside the target"});
      return out;
    }
    vhit[c.vertex_surj[v]] = true;
  }
  if (std::find(vhit.begin(), vhit.end(), false) != vhit.end()) {
    out.push_back({"contraction-shape", "vertex map is not surjective"});
  }
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    const std::size_t g = c.flag_inj[f];
    if (c.vertex_surj[t.vertex_of(g)] != s.vertex_of(f)) {
      out.push_back({"contraction-shape", "flag " + num(f) + " does not commute with the boundary maps"});
    }
    if (s.is_tail(f) != t.is_tail(g)) {
      out.push_back({"contraction-shape", "flag " + num(f) + " changes between tail and edge"});
    } else if (!s.is_tail(f) && c.flag_inj[s.partner(f)] != t.partner(g)) {
      out.push_back({"contraction-shape", "edge at flag " + num(f) + " is not preserved"});
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> collapsed;
  for (std::size_t g = 0; g < t.flags.size(); ++g) {
    if (hit[g]) continue;
    if (t.is_tail(g)) {
      out.push_back({"contraction-shape", "tail " + num(g) + " of the source is not in the image"});
      continue;
    }
    const std::size_t h = t.partner(g);
    if (hit[h]) continue;  // reported above through the partner check
    if (c.vertex_surj[t.vertex_of(g)] != c.vertex_surj[t.vertex_of(h)]) {
      out.push_back({"contraction-shape", "collapsed edge at flag " + num(g) + " joins different fibres"});
    }
    if (g < h) collapsed.emplace_back(g, h);
  }
  if (!out.empty()) return out;

  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    std::vector<std::size_t> fibre;
    CurveClass cls = s.zero_class();
    std::int64_t genus = 0;
    for (std::size_t w = 0; w < t.vertices.size(); ++w) {
      if (c.vertex_surj[w] != v) continue;
      fibre.push_back(w);
      cls += t.vertices[w].cls;
      genus += t.vertices[w].genus;
    }
    std::vector<std::pair<std::size_t, std::size_t>> inner;
    for (const auto& e : collapsed) {
      if (c.vertex_surj[t.vertex_of(e.first)] == v) inner.push_back(e);
    }
    const auto [components, edges] = subgraph_shape(t, fibre, inner);
    if (components != 1) out.push_back({"contraction-shape", "fibre of vertex " + num(v) + " is not connected"});
    const auto betti = static_cast<std::int64_t>(edges) - static_cast<std::int64_t>(fibre.size()) +
                       static_cast<std::int64_t>(components);
    if (!(cls == s.vertices[v].cls)) out.push_back({"contraction-1", "classes do not add up at vertex " + num(v)});
    if (genus + betti != s.vertices[v].genus) {
      out.push_back({"contraction-2", "genus of vertex " + num(v) + " is " + std::to_string(s.vertices[v].genus) +
                                          ", expected " + std::to_string(genus + betti)});
    }
  }
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    if (!s.is_tail(f)) continue;
    const auto& a = s.flags[f];
    const auto& b = t.flags[c.flag_inj[f]];
    if (a.weight != b.weight) out.push_back({"contraction-3", "weight of tail " + num(f) + " changes"});
    if (a.label != b.label) out.push_back({"contraction-3", "label of tail " + num(f) + " changes"});
  }
  return out;
}

std::vector<Violation> validate_morphism(const GraphMorphism& m) {
  std::vector<Violation> out;
  if (!(m.comb.source == m.contraction.source)) {
    out.push_back({"morphism-shape", "combinatorial part and contraction start at different graphs"});
  }
  if (!is_stable(m.middle())) out.push_back({"morphism-stable", "middle graph is not stable"});
  for (auto& v : validate_comb(m.comb)) out.push_back(std::move(v));
  for (auto& v : validate_contraction(m.contraction)) out.push_back(std::move(v));
  return out;
}

CombinatorialMorphism identity_comb(const WGraph& g) {
  CombinatorialMorphism m{g, g, {}, {}, {}};
  m.flag_map.resize(g.flags.size());
  m.vertex_map.resize(g.vertices.size());
  std::iota(m.flag_map.begin(), m.flag_map.end(), 0);
  std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0);
  return m;
}

Contraction identity_contraction(const WGraph& g) {
  Contraction c{g, g, {}, {}};
  c.flag_inj.resize(g.flags.size());
  c.vertex_surj.resize(g.vertices.size());
  std::iota(c.flag_inj.begin(), c.flag_inj.end(), 0);
  std::iota(c.vertex_surj.begin(), c.vertex_surj.end(), 0);
  return c;
}

GraphMorphism identity_morphism(const WGraph& g) { return {identity_comb(g), identity_contraction(g)}; }

CombinatorialMorphism compose_comb(const CombinatorialMorphism& first, const CombinatorialMorphism& second) {
  if (!(second.target == first.source)) throw Error("mismatch", "combinatorial morphisms do not compose");
  CombinatorialMorphism out{second.source, first.target, {}, {}, {}};
  for (std::size_t f : second.flag_map) out.flag_map.push_back(first.flag_map[f]);
  for (std::size_t v : second.vertex_map) out.vertex_map.push_back(first.vertex_map[v]);
  // Classes travel backwards: target -> first.source -> second.source.
  out.xi = compose_maps(second.xi, first.xi);
  return out;
}

Contraction compose_contraction(const Contraction& first, const Contraction& second) {
  if (!(second.target == first.source)) throw Error("mismatch", "contractions do not compose");
  Contraction out{second.source, first.target, {}, {}};
  for (std::size_t f : first.flag_inj) out.flag_inj.push_back(second.flag_inj[f]);
  for (std::size_t v : second.vertex_surj) out.vertex_surj.push_back(first.vertex_surj[v]);
  return out;
}

Contraction contract_edges(const WGraph& g, const std::vector<std::size_t>& edge_flags) {
  std::vector<bool> collapse(g.flags.size(), false);
  for (std::size_t f : edge_flags) {
    if (f >= g.flags.size() || g.is_tail(f)) throw Error("not-an-edge", "flag " + num(f) + " is not on an edge");
    collapse[f] = collapse[g.partner(f)] = true;
  }
  const std::size_t nv = g.vertices.size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t f = 0; f < g.flags.size(); ++f) {
    if (!collapse[f] || g.partner(f) < f) continue;
    const auto a = find(g.vertex_of(f));
    const auto b = find(g.vertex_of(g.partner(f)));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Contraction c;
  c.source = g;
  c.target = WGraph(g.profile);
  std::vector<std::size_t> new_index(nv, SIZE_MAX);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto r = find(v);
    if (new_index[r] == SIZE_MAX) {
      new_index[r] = c.target.vertices.size();
      c.target.vertices.push_back(Vertex{0, g.zero_class()});
    }
  }
  c.vertex_surj.resize(nv);
  std::vector<std::size_t> fibre_size(c.target.vertices.size(), 0), fibre_edges(c.target.vertices.size(), 0);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t t = new_index[find(v)];
    c.vertex_surj[v] = t;
    c.target.vertices[t].genus += g.vertices[v].genus;
    c.target.vertices[t].cls += g.vertices[v].cls;
    ++fibre_size[t];
  }
  for (std::size_t f = 0; f < g.flags.size(); ++f) {
    if (collapse[f] && g.partner(f) > f) ++fibre_edges[c.vertex_surj[g.vertex_of(f)]];
  }
  for (std::size_t t = 0; t < c.target.vertices.size(); ++t) {
    c.target.vertices[t].genus += static_cast<int>(fibre_edges[t] + 1 - fibre_size[t]);
  }
  std::vector<std::size_t> fnew(g.flags.size(), SIZE_MAX);
  for (std::size_t f = 0; f < g.flags.size(); ++f) {
    if (collapse[f]) continue;
    fnew[f] = c.flag_inj.size();
    c.flag_inj.push_back(f);
  }
  for (std::size_t f : c.flag_inj) {
    Flag fl = g.flags[f];
    fl.vertex = c.vertex_surj[fl.vertex];
    fl.partner = fnew[fl.partner];
    c.target.flags.push_back(std::move(fl));
  }
  return c;
}

Contraction contract_edge(const WGraph& g, std::size_t flag) { return contract_edges(g, {flag}); }

GraphMorphism from_contraction(const Contraction& c) { return {identity_comb(c.source), c}; }

GraphMorphism from_comb(const CombinatorialMorphism& a) { return {a, identity_contraction(a.source)}; }

CombinatorialMorphism stabilization_morphism(const WGraph& g) {
  auto st = stabilize(g);
  return CombinatorialMorphism{st.graph, g, st.flag_map, st.vertex_map, {}};
}

bool equivalent(const GraphMorphism& x, const GraphMorphism& y) {
  if (!(x.source() == y.source()) || !(x.target() == y.target())) return false;
  if (x.comb.xi != y.comb.xi) return false;
  const WGraph& mx = x.middle();
  const WGraph& my = y.middle();
  if (mx.vertices.size() != my.vertices.size() || mx.flags.size() != my.flags.size()) return false;
  const auto nvt = static_cast<std::int64_t>(x.target().vertices.size()) + 1;
  const auto nft = static_cast<std::int64_t>(x.target().flags.size()) + 1;
  auto colours = [&](const GraphMorphism& m, std::vector<std::int64_t>& vc, std::vector<std::int64_t>& fc) {
    const WGraph& mid = m.middle();
    const auto inv = inverse_injection(m.contraction.flag_inj, mid.flags.size());
    for (std::size_t v = 0; v < mid.vertices.size(); ++v) {
      vc.push_back(static_cast<std::int64_t>(m.comb.vertex_map[v]) * nvt +
                   static_cast<std::int64_t>(m.contraction.vertex_surj[v]));
    }
    for (std::size_t f = 0; f < mid.flags.size(); ++f) {
      const std::int64_t pre = inv[f] == SIZE_MAX ? nft - 1 : static_cast<std::int64_t>(inv[f]);
      fc.push_back(static_cast<std::int64_t>(m.comb.flag_map[f]) * nft + pre);
    }
  };
  std::vector<std::int64_t> vx, fx, vy, fy;
  colours(x, vx, fx);
  colours(y, vy, fy);
  return canonical_form(mx, &vx, &fx) == canonical_form(my, &vy, &fy);
}

AbsoluteStabilization absolute_stabilization(const WGraph& g) {
  WGraph stripped = g;
  for (auto& v : stripped.vertices) v.cls = stripped.zero_class();
  auto st = stabilize(stripped);
  return {std::move(st.graph), std::move(st.vertex_map), std::move(st.flag_map), std::move(st.trace)};
}

bool small_tail_contraction(const WGraph& g, std::size_t v, const std::vector<std::size_t>& dropped_tails) {
  const auto here = g.flags_at(v);
  if (here.size() > kMaxLabels) throw Error("too-large", "too many flags at one vertex");
  std::vector<Rational> weights;
  for (std::size_t f : here) weights.push_back(g.is_tail(f) ? g.flags[f].weight : Rational(1));
  Subset drop = 0;
  for (std::size_t t : dropped_tails) {
    const auto it = std::find(here.begin(), here.end(), t);
    if (it == here.end() || !g.is_tail(t)) throw Error("not-a-tail", "flag " + num(t) + " is not a tail at the vertex");
    drop |= singleton(static_cast<std::size_t>(it - here.begin()));
  }
  // Depth-first over removal orders; `remaining` is the set of flags still present.
  std::map<Subset, bool> memo;
  std::function<bool(Subset, Subset)> reach = [&](Subset present, Subset todo) -> bool {
    if (todo == 0) return true;
    if (auto it = memo.find(present); it != memo.end()) return it->second;
    std::vector<Rational> w;
    std::vector<std::size_t> pos;
    for (std::size_t i : subset_members(present)) {
      pos.push_back(i);
      w.push_back(weights[i]);
    }
    const WeightData data = WeightData::from_weights(w);
    bool ok = false;
    for (std::size_t k = 0; k < pos.size() && !ok; ++k) {
      if (!contains(todo, pos[k])) continue;
      if (is_small_tail(data, k)) ok = reach(present & ~singleton(pos[k]), todo & ~singleton(pos[k]));
    }
    memo[present] = ok;
    return ok;
  };
  return reach(full_subset(here.size()), drop);
}

std::vector<Violation> validate_isogeny(const Isogeny& iso) {
  std::vector<Violation> out;
  const WGraph& t = iso.source;
  const WGraph& s = iso.target;
  if (iso.flag_inj.size() != s.flags.size() || iso.vertex_surj.size() != t.vertices.size()) {
    out.push_back({"isogeny-shape", "map sizes do not match the graphs"});
    return out;
  }
  std::vector<bool> hit(t.flags.size(), false), vhit(s.vertices.size(), false);
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    const std::size_t g = iso.flag_inj[f];
    if (g >= t.flags.size()) {
      out.push_back({"isogeny-shape", "flag " + num(f) + " maps outside the source"});
      return out;
    }
    if (hit[g]) out.push_back({"isogeny-shape", "flag map is not injective"});
    hit[g] = true;
  }
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    if (iso.vertex_surj[v] >= s.vertices.size()) {
      out.push_back({"isogeny-shape", "vertex " + num(v) + " maps outside the target"});
      return out;
    }
    vhit[iso.vertex_surj[v]] = true;
  }
  if (std::find(vhit.begin(), vhit.end(), false) != vhit.end()) {
    out.push_back({"isogeny-shape", "vertex map is not surjective"});
  }
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    const std::size_t g = iso.flag_inj[f];
    if (s.is_tail(f) != t.is_tail(g)) {
      out.push_back({"isogeny-shape", "flag " + num(f) + " changes between tail and edge"});
    } else if (!s.is_tail(f) && iso.flag_inj[s.partner(f)] != t.partner(g)) {
      out.push_back({"isogeny-shape", "edge at flag " + num(f) + " is not preserved"});
    }
  }
  for (std::size_t g = 0; g < t.flags.size(); ++g) {
    if (hit[g] || t.is_tail(g)) continue;
    const std::size_t h = t.partner(g);
    if (!hit[h] && iso.vertex_surj[t.vertex_of(g)] != iso.vertex_surj[t.vertex_of(h)]) {
      out.push_back({"isogeny-shape", "collapsed edge at flag " + num(g) + " joins different fibres"});
    }
  }
  if (!out.empty()) return out;

  // (1)
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    if (iso.vertex_surj[t.vertex_of(iso.flag_inj[f])] != s.vertex_of(f)) {
      out.push_back({"isogeny-1", "flag " + num(f) + " does not commute with the boundary maps"});
    }
  }
  // (2) over the preimage with the edges it collapses
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    std::vector<std::size_t> fibre;
    CurveClass cls = s.zero_class();
    std::int64_t genus = 0;
    for (std::size_t w = 0; w < t.vertices.size(); ++w) {
      if (iso.vertex_surj[w] != v) continue;
      fibre.push_back(w);
      cls += t.vertices[w].cls;
      genus += t.vertices[w].genus;
    }
    std::vector<std::pair<std::size_t, std::size_t>> inner;
    for (const auto& [f, h] : t.edges()) {
      if (!hit[f] && iso.vertex_surj[t.vertex_of(f)] == v) inner.emplace_back(f, h);
    }
    const auto [components, edges] = subgraph_shape(t, fibre, inner);
    const auto betti = static_cast<std::int64_t>(edges) - static_cast<std::int64_t>(fibre.size()) +
                       static_cast<std::int64_t>(components);
    if (components != 1) out.push_back({"isogeny-2", "fibre of vertex " + num(v) + " is not connected"});
    if (genus + betti != s.vertices[v].genus) {
      out.push_back({"isogeny-2", "genus of vertex " + num(v) + " is " + std::to_string(s.vertices[v].genus) +
                                      ", expected " + std::to_string(genus + betti)});
    }
    if (!(cls == s.vertices[v].cls)) out.push_back({"isogeny-2", "classes do not add up at vertex " + num(v)});
  }
  // (3)
  for (std::size_t f = 0; f < s.flags.size(); ++f) {
    if (t.flags[iso.flag_inj[f]].weight != s.flags[f].weight) {
      out.push_back({"isogeny-3", "weight of flag " + num(f) + " changes"});
    }
  }
  // (4) tails outside the image are forgotten one by one as small tails
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    std::vector<std::size_t> dropped;
    for (std::size_t f : t.tails_at(v)) {
      if (!hit[f]) dropped.push_back(f);
    }
    if (dropped.empty()) continue;
    if (!small_tail_contraction(t, v, dropped)) {
      out.push_back({"isogeny-4", "tails dropped at vertex " + num(v) + " are not a contraction of small tails"});
    }
  }
  return out;
}

Isogeny isogeny_from_contraction(const Contraction& c) { return {c.source, c.target, c.flag_inj, c.vertex_surj}; }

}  // namespace wsm
