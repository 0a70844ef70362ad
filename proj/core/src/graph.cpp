#include "wsm/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "wsm/error.hpp"

namespace wsm {

std::size_t WGraph::add_vertex(int genus, CurveClass cls) {
  vertices.push_back(Vertex{genus, std::move(cls)});
  return vertices.size() - 1;
}

std::size_t WGraph::add_vertex(int genus) { return add_vertex(genus, zero_class()); }

std::size_t WGraph::add_tail(std::size_t v, Rational weight, std::string label) {
  const std::size_t f = flags.size();
  flags.push_back(Flag{v, f, std::move(weight), std::move(label)});
  return f;
}

std::pair<std::size_t, std::size_t> WGraph::add_edge(std::size_t v, std::size_t w) {
  const std::size_t f = flags.size();
  flags.push_back(Flag{v, f + 1, Rational(1), {}});
  flags.push_back(Flag{w, f, Rational(1), {}});
  return {f, f + 1};
}

std::vector<std::size_t> WGraph::tails() const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (is_tail(f)) out.push_back(f);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> WGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (flags[f].partner > f) out.emplace_back(f, flags[f].partner);
  }
  return out;
}

std::vector<std::size_t> WGraph::flags_at(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (flags[f].vertex == v) out.push_back(f);
  }
  return out;
}

std::vector<std::size_t> WGraph::tails_at(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (flags[f].vertex == v && is_tail(f)) out.push_back(f);
  }
  return out;
}

std::size_t WGraph::edge_valence(std::size_t v) const {
  std::size_t n = 0;
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (flags[f].vertex == v && !is_tail(f)) ++n;
  }
  return n;
}

std::size_t WGraph::n_tails() const { return tails().size(); }
std::size_t WGraph::n_edges() const { return (flags.size() - n_tails()) / 2; }

std::vector<std::size_t> WGraph::components() const {
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [f, h] : edges()) {
    const auto a = find(flags[f].vertex);
    const auto b = find(flags[h].vertex);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> id(vertices.size()), root_id(vertices.size(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto r = find(v);
    if (root_id[r] == SIZE_MAX) root_id[r] = next++;
    id[v] = root_id[r];
  }
  return id;
}

std::size_t WGraph::n_components() const {
  const auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

WeightData WGraph::tail_weights() const {
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  for (std::size_t f : tails()) {
    labels.push_back(flags[f].label.empty() ? "t" + std::to_string(f) : flags[f].label);
    weights.push_back(flags[f].weight);
  }
  return WeightData(std::move(labels), std::move(weights));
}

std::size_t WGraph::tail_by_label(const std::string& label) const {
  for (std::size_t f = 0; f < flags.size(); ++f) {
    if (is_tail(f) && flags[f].label == label) return f;
  }
  throw Error("unknown-label", "no tail labelled '" + label + "'");
}

std::vector<Violation> validate(const WGraph& g) {
  std::vector<Violation> out;
  const std::size_t nv = g.vertices.size();
  const std::size_t nf = g.flags.size();
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& x = g.vertices[v];
    if (x.genus < 0) out.push_back({"genus", "vertex " + std::to_string(v) + " has negative genus"});
    if (x.cls.rank() != g.profile.rank()) {
      out.push_back({"rank", "class of vertex " + std::to_string(v) + " has rank " + std::to_string(x.cls.rank()) +
                                 ", profile rank is " + std::to_string(g.profile.rank())});
    }
  }
  std::set<std::string> labels;
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& fl = g.flags[f];
    const std::string id = "flag " + std::to_string(f);
    if (fl.vertex >= nv) out.push_back({"vertex-range", id + " points at missing vertex " + std::to_string(fl.vertex)});
    if (fl.partner >= nf) {
      out.push_back({"involution", id + " has missing partner " + std::to_string(fl.partner)});
      continue;
    }
    if (g.flags[fl.partner].partner != f) out.push_back({"involution", id + " is not paired back by its partner"});
    if (fl.partner != f && fl.weight != Rational(1)) {
      out.push_back({"edge-flag-weight", id + " lies on an edge but has weight " + fl.weight.str()});
    }
    if (fl.weight.sign() <= 0 || fl.weight > Rational(1)) {
      out.push_back({"weight-range", id + " has weight " + fl.weight.str() + " outside (0,1]"});
    }
    if (fl.partner == f && !fl.label.empty() && !labels.insert(fl.label).second) {
      out.push_back({"label-duplicate", "tail label '" + fl.label + "' is used twice"});
    }
  }
  return out;
}

void require_valid(const WGraph& g) {
  const auto v = validate(g);
  if (v.empty()) return;
  std::string msg;
  for (const auto& x : v) msg += (msg.empty() ? "" : "; ") + x.code + ": " + x.message;
  throw Error("invalid-graph", msg);
}

GraphStats stats(const WGraph& g) {
  GraphStats s;
  s.beta_total = g.zero_class();
  std::int64_t genus_sum = 0;
  for (const auto& v : g.vertices) {
    s.beta_total += v.cls;
    genus_sum += v.genus;
  }
  s.n_tails = g.n_tails();
  s.n_edges = g.n_edges();
  s.n_components = g.n_components();
  s.betti1 = static_cast<std::int64_t>(s.n_edges) - static_cast<std::int64_t>(g.vertices.size()) +
             static_cast<std::int64_t>(s.n_components);
  const std::int64_t chi_top = static_cast<std::int64_t>(s.n_components) - s.betti1;
  s.euler = chi_top - genus_sum;
  s.genus_total = 1 - s.euler;
  s.vdim = s.euler * (g.profile.dim_v - 3) - g.profile.canonical_pairing(s.beta_total) +
           static_cast<std::int64_t>(s.n_tails) - static_cast<std::int64_t>(s.n_edges);
  return s;
}

bool is_vertex_stable(const WGraph& g, std::size_t v) {
  std::vector<Rational> w;
  for (std::size_t f : g.flags_at(v)) w.push_back(g.flags[f].weight);
  return vertex_ample(g.vertices[v].genus, w, g.vertices[v].cls);
}

bool is_stable(const WGraph& g) {
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!is_vertex_stable(g, v)) return false;
  }
  return true;
}

std::vector<std::size_t> unstable_vertices(const WGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!is_vertex_stable(g, v)) out.push_back(v);
  }
  return out;
}

std::string to_string(StabilizationStep::Kind kind) {
  switch (kind) {
    case StabilizationStep::Kind::remove_component: return "remove-component";
    case StabilizationStep::Kind::prune_vertex: return "prune-vertex";
    case StabilizationStep::Kind::splice_vertex: return "splice-vertex";
  }
  return "?";
}

WGraph induced(const WGraph& g, const std::vector<bool>& keep_vertex, const std::vector<bool>& keep_flag,
               std::vector<std::size_t>* vertex_map, std::vector<std::size_t>* flag_map) {
  std::vector<std::size_t> vnew(g.vertices.size(), SIZE_MAX), fnew(g.flags.size(), SIZE_MAX);
  WGraph out(g.profile);
  std::vector<std::size_t> vmap, fmap;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!keep_vertex[v]) continue;
    vnew[v] = out.vertices.size();
    out.vertices.push_back(g.vertices[v]);
    vmap.push_back(v);
  }
  for (std::size_t f = 0; f < g.flags.size(); ++f) {
    if (!keep_flag[f]) continue;
    fnew[f] = fmap.size();
    fmap.push_back(f);
  }
  for (std::size_t f : fmap) {
    Flag fl = g.flags[f];
    fl.vertex = vnew[fl.vertex];
    fl.partner = fnew[fl.partner];
    out.flags.push_back(std::move(fl));
  }
  if (vertex_map) *vertex_map = std::move(vmap);
  if (flag_map) *flag_map = std::move(fmap);
  return out;
}

StepResult apply_stabilization_step(const WGraph& g, std::size_t v) {
  if (v >= g.vertices.size()) throw Error("vertex-range", "no such vertex");
  if (is_vertex_stable(g, v)) throw Error("stable-vertex", "vertex " + std::to_string(v) + " is stable");
  StepResult r;
  r.step.vertex = v;
  WGraph work = g;
  std::vector<bool> keep_v(g.vertices.size(), true), keep_f(g.flags.size(), true);
  keep_v[v] = false;
  const auto here = g.flags_at(v);
  std::vector<std::size_t> edge_flags, tail_flags;
  bool leaves_vertex = false;
  for (std::size_t f : here) {
    keep_f[f] = false;
    r.step.removed_flags.push_back(f);
    if (g.is_tail(f)) {
      tail_flags.push_back(f);
    } else {
      edge_flags.push_back(f);
      if (g.vertex_of(g.partner(f)) != v) leaves_vertex = true;
    }
  }
  if (!leaves_vertex) {
    // Unstable one-vertex component (possibly carrying a loop).
    r.step.kind = StabilizationStep::Kind::remove_component;
    r.step.dropped_tails = tail_flags;
  } else if (edge_flags.size() == 1) {
    r.step.kind = StabilizationStep::Kind::prune_vertex;
    r.step.dropped_tails = tail_flags;
    const std::size_t p = g.partner(edge_flags[0]);
    r.step.new_tail = p;
    work.flags[p].partner = p;
    work.flags[p].weight = Rational(1);
  } else if (edge_flags.size() == 2 && tail_flags.empty()) {
    r.step.kind = StabilizationStep::Kind::splice_vertex;
    const std::size_t p = g.partner(edge_flags[0]);
    const std::size_t q = g.partner(edge_flags[1]);
    r.step.spliced = std::make_pair(std::min(p, q), std::max(p, q));
    work.flags[p].partner = q;
    work.flags[q].partner = p;
  } else {
    throw Error("internal", "unstable vertex of unexpected shape");
  }
  r.graph = induced(work, keep_v, keep_f, &r.vertex_map, &r.flag_map);
  return r;
}

StabilizationResult stabilize(const WGraph& g) {
  StabilizationResult out;
  out.graph = g;
  out.vertex_map.resize(g.vertices.size());
  out.flag_map.resize(g.flags.size());
  std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
  std::iota(out.flag_map.begin(), out.flag_map.end(), 0);
  while (true) {
    const auto bad = unstable_vertices(out.graph);
    if (bad.empty()) break;
    const std::size_t before = out.graph.vertices.size() + out.graph.flags.size();
    StepResult r = apply_stabilization_step(out.graph, bad.front());
    // Translate the step to input indices.
    StabilizationStep s = r.step;
    s.vertex = out.vertex_map[s.vertex];
    for (auto& f : s.removed_flags) f = out.flag_map[f];
    for (auto& f : s.dropped_tails) f = out.flag_map[f];
    if (s.new_tail) s.new_tail = out.flag_map[*s.new_tail];
    if (s.spliced) s.spliced = std::make_pair(out.flag_map[s.spliced->first], out.flag_map[s.spliced->second]);
    out.trace.push_back(std::move(s));
    std::vector<std::size_t> vm, fm;
    for (std::size_t x : r.vertex_map) vm.push_back(out.vertex_map[x]);
    for (std::size_t x : r.flag_map) fm.push_back(out.flag_map[x]);
    out.vertex_map = std::move(vm);
    out.flag_map = std::move(fm);
    out.graph = std::move(r.graph);
    if (out.graph.vertices.size() + out.graph.flags.size() >= before) {
      throw Error("internal", "stabilization step did not shrink the graph");
    }
  }
  return out;
}

WGraph relabel(const WGraph& g, const std::vector<std::size_t>& vertex_perm, const std::vector<std::size_t>& flag_perm) {
  std::vector<std::size_t> vinv(g.vertices.size()), finv(g.flags.size());
  for (std::size_t i = 0; i < vertex_perm.size(); ++i) vinv[vertex_perm[i]] = i;
  for (std::size_t i = 0; i < flag_perm.size(); ++i) finv[flag_perm[i]] = i;
  WGraph out(g.profile);
  for (std::size_t i = 0; i < vertex_perm.size(); ++i) out.vertices.push_back(g.vertices[vertex_perm[i]]);
  for (std::size_t i = 0; i < flag_perm.size(); ++i) {
    Flag f = g.flags[flag_perm[i]];
    f.vertex = vinv[f.vertex];
    f.partner = finv[f.partner];
    out.flags.push_back(std::move(f));
  }
  return out;
}

WGraph disjoint_union(const WGraph& a, const WGraph& b) {
  if (!(a.profile == b.profile)) throw Error("profile-mismatch", "graphs over different targets");
  WGraph out = a;
  const std::size_t dv = a.vertices.size(), df = a.flags.size();
  for (const auto& v : b.vertices) out.vertices.push_back(v);
  for (Flag f : b.flags) {
    f.vertex += dv;
    f.partner += df;
    out.flags.push_back(std::move(f));
  }
  return out;
}

std::string to_dot(const WGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    os << "  v" << v << " [label=\"g=" << g.vertices[v].genus << ", β=" << g.vertices[v].cls.str() << "\"];\n";
  }
  for (std::size_t f : g.tails()) {
    os << "  t" << f << " [shape=point, xlabel=\"";
    if (!g.flags[f].label.empty()) os << g.flags[f].label << " ";
    os << "w=" << g.flags[f].weight << "\"];\n";
    os << "  v" << g.flags[f].vertex << " -- t" << f << ";\n";
  }
  for (const auto& [f, h] : g.edges()) os << "  v" << g.flags[f].vertex << " -- v" << g.flags[h].vertex << ";\n";
  os << "}\n";
  return os.str();
}

std::string describe(const WGraph& g) {
  std::ostringstream os;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (v) os << " ";
    os << "v" << v << "(g" << g.vertices[v].genus << g.vertices[v].cls.str() << ":";
    bool first = true;
    for (std::size_t f : g.flags_at(v)) {
      os << (first ? "" : ",");
      first = false;
      if (g.is_tail(f)) {
        os << (g.flags[f].label.empty() ? "t" : g.flags[f].label) << "=" << g.flags[f].weight;
      } else {
        os << "e>v" << g.vertex_of(g.partner(f));
      }
    }
    os << ")";
  }
  return os.str();
}

}  // namespace wsm
