#include "wsm/reduction.hpp"

#include <algorithm>

#include "wsm/chambers.hpp"
#include "wsm/error.hpp"

namespace wsm {

namespace {

void require_comparable(const WeightData& a, const WeightData& b) {
  if (!a.same_labels(b) || !a.dominates(b)) {
    throw Error("incomparable", "weights " + a.str() + " and " + b.str() + " are not componentwise comparable");
  }
}

std::vector<Subset> walls_by_size(std::size_t n, int min_size) {
  std::vector<Subset> out;
  for (Subset s = 1; s <= full_subset(n); ++s) {
    if (subset_size(s) >= min_size) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), subset_lex_less);
  return out;
}

void check_admissible_total(const WGraph& g, const WeightData& weights) {
  const GraphStats st = stats(g);
  if (!is_admissible({static_cast<int>(st.genus_total), weights, st.beta_total})) {
    throw Error("inadmissible", "weights " + weights.str() + " are not admissible for this graph");
  }
}

bool contractible(const WGraph& g, std::size_t v) {
  const Vertex& x = g.vertices[v];
  if (x.genus != 0 || !x.cls.is_zero()) return false;
  const std::size_t valence = g.edge_valence(v);
  if (valence == 1) {
    Rational sum(0);
    for (std::size_t t : g.tails_at(v)) sum += g.flags[t].weight;
    return sum <= Rational(1);
  }
  return valence == 2 && g.tails_at(v).empty();
}

// Contracts genus-0 class-0 vertices that are unstable, keeping tails.
WGraph contract_unstable(WGraph g) {
  while (true) {
    std::size_t v = 0;
    while (v < g.vertices.size() && !contractible(g, v)) ++v;
    if (v == g.vertices.size()) break;
    std::vector<std::size_t> edge_flags;
    for (std::size_t f : g.flags_at(v)) {
      if (!g.is_tail(f)) edge_flags.push_back(f);
    }
    std::vector<bool> keep_v(g.vertices.size(), true);
    std::vector<bool> keep_f(g.flags.size(), true);
    keep_v[v] = false;
    if (edge_flags.size() == 1) {
      const std::size_t f = edge_flags[0];
      const std::size_t p = g.partner(f);
      const std::size_t u = g.vertex_of(p);
      for (std::size_t t : g.tails_at(v)) g.flags[t].vertex = u;
      keep_f[f] = keep_f[p] = false;
    } else {
      const std::size_t f1 = edge_flags[0];
      const std::size_t f2 = edge_flags[1];
      if (g.partner(f1) == f2) throw Error("inadmissible", "isolated genus-0 loop");
      const std::size_t p1 = g.partner(f1);
      const std::size_t p2 = g.partner(f2);
      g.flags[p1].partner = p2;
      g.flags[p2].partner = p1;
      keep_f[f1] = keep_f[f2] = false;
    }
    g = induced(g, keep_v, keep_f);
  }
  return g;
}

void require_tail(const WGraph& g, std::size_t t) {
  if (t >= g.flags.size() || !g.is_tail(t)) throw Error("not-a-tail", "flag " + std::to_string(t) + " is not a tail");
}

}  // namespace

WeightData interpolate(const WeightData& a, const WeightData& b, const Rational& lambda) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < a.size(); ++i) w.push_back(lambda * a.weight(i) + (Rational(1) - lambda) * b.weight(i));
  return WeightData(a.labels(), std::move(w));
}

ReductionPath reduction_path(const WeightData& a, const WeightData& b) {
  require_comparable(a, b);
  ReductionPath out{a, b, {}, {}};
  std::vector<std::pair<Rational, Subset>> hits;
  for (Subset s : walls_by_size(a.size(), 2)) {
    const Rational sa = a.sum(s);
    const Rational sb = b.sum(s);
    if (sa == Rational(1) || sa == sb) continue;
    const Rational lambda = (Rational(1) - sb) / (sa - sb);
    if (lambda > Rational(0) && lambda < Rational(1)) hits.emplace_back(lambda, s);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [lambda, s] : hits) {
    if (out.breakpoints.empty() || out.breakpoints.back() != lambda) {
      out.breakpoints.push_back(lambda);
      out.crossed_walls.emplace_back();
    }
    out.crossed_walls.back().push_back(s);
  }
  return out;
}

std::vector<ContractedDivisor> contracted_divisors(const WeightData& a, const WeightData& b) {
  require_comparable(a, b);
  std::vector<ContractedDivisor> out;
  const Subset all = full_subset(a.size());
  for (Subset s : walls_by_size(a.size(), 1)) {
    const Rational sb = b.sum(s);
    if (a.sum(s) > Rational(1) && sb <= Rational(1)) {
      out.push_back({s, all & ~s, subset_size(s) > 2, sb == Rational(1)});
    }
  }
  return out;
}

std::string to_string(ReductionClass::Kind kind) {
  switch (kind) {
    case ReductionClass::Kind::isomorphism: return "isomorphism";
    case ReductionClass::Kind::blowup: return "blowup";
    case ReductionClass::Kind::general: return "general";
  }
  return "?";
}

std::string describe(const ReductionClass& c, const WeightData& labels) {
  if (c.kind != ReductionClass::Kind::blowup) return to_string(c.kind);
  std::string out = "blowup({";
  const auto names = labels.labels_of(c.I);
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "})";
}

ReductionClass classify_reduction(const WeightData& a, const WeightData& b) {
  const auto divisors = contracted_divisors(a, b);
  if (std::none_of(divisors.begin(), divisors.end(), [](const auto& d) { return d.is_exceptional; })) {
    return {ReductionClass::Kind::isomorphism, 0};
  }
  if (divisors.size() == 1) return {ReductionClass::Kind::blowup, divisors[0].I};
  return {ReductionClass::Kind::general, 0};
}

WGraph reduce_graph(const WGraph& g, const WeightData& b) {
  require_valid(g);
  if (!is_stable(g)) throw Error("unstable", "reduce_graph needs a stable input graph");
  const WeightData current = g.tail_weights();
  if (b.size() != current.size()) throw Error("label-mismatch", "target weights must cover every tail");
  WGraph out = g;
  const auto tails = g.tails();
  for (std::size_t i = 0; i < tails.size(); ++i) {
    const Rational& w = b.weight(current.label(i));
    if (w > current.weight(i)) {
      throw Error("weight-increase", "weight of " + current.label(i) + " would rise from " + current.weight(i).str() +
                                         " to " + w.str());
    }
    out.flags[tails[i]].weight = w;
  }
  check_admissible_total(out, out.tail_weights());
  return contract_unstable(std::move(out));
}

WGraph forget_tail(const WGraph& g, std::size_t tail) {
  require_valid(g);
  require_tail(g, tail);
  std::vector<bool> keep_v(g.vertices.size(), true);
  std::vector<bool> keep_f(g.flags.size(), true);
  keep_f[tail] = false;
  WGraph out = induced(g, keep_v, keep_f);
  check_admissible_total(out, out.tail_weights());
  return contract_unstable(std::move(out));
}

WGraph combine_tails(const WGraph& g, const std::vector<std::size_t>& group) {
  require_valid(g);
  if (group.empty()) throw Error("bad-group", "empty group of tails");
  std::vector<bool> keep_f(g.flags.size(), true);
  Rational sum(0);
  std::string label;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const std::size_t t = group[i];
    require_tail(g, t);
    if (g.vertex_of(t) != g.vertex_of(group[0])) throw Error("bad-group", "tails lie on different vertices");
    if (i > 0 && !keep_f[t]) throw Error("bad-group", "repeated tail " + std::to_string(t));
    sum += g.flags[t].weight;
    const std::string& name = g.flags[t].label.empty() ? "t" + std::to_string(t) : g.flags[t].label;
    label += (i ? "+" : "") + name;
    if (i > 0) keep_f[t] = false;
  }
  if (sum > Rational(1)) throw Error("weight-overflow", "combined weight " + sum.str() + " exceeds 1");
  WGraph out = g;
  out.flags[group[0]].weight = sum;
  out.flags[group[0]].label = group.size() == 1 ? g.flags[group[0]].label : label;
  return induced(out, std::vector<bool>(g.vertices.size(), true), keep_f);
}

namespace {

void require_gluing_tail(const WGraph& g, std::size_t t) {
  require_tail(g, t);
  if (g.flags[t].weight != Rational(1)) {
    throw Error("gluing-weight", "tail " + std::to_string(t) + " has weight " + g.flags[t].weight.str() + ", not 1");
  }
}

void join(WGraph& g, std::size_t a, std::size_t b) {
  g.flags[a].partner = b;
  g.flags[b].partner = a;
  g.flags[a].label.clear();
  g.flags[b].label.clear();
}

}  // namespace

WGraph glue(const WGraph& g1, std::size_t t1, const WGraph& g2, std::size_t t2) {
  require_valid(g1);
  require_valid(g2);
  require_gluing_tail(g1, t1);
  require_gluing_tail(g2, t2);
  if (!(g1.profile == g2.profile)) throw Error("mismatch", "graphs have different target profiles");
  WGraph out = disjoint_union(g1, g2);
  join(out, t1, g1.flags.size() + t2);
  return out;
}

WGraph self_glue(const WGraph& g, std::size_t t1, std::size_t t2) {
  require_valid(g);
  require_gluing_tail(g, t1);
  require_gluing_tail(g, t2);
  if (t1 == t2) throw Error("bad-group", "cannot glue a tail to itself");
  WGraph out = g;
  join(out, t1, t2);
  return out;
}

WGraph cut_edge(const WGraph& g, std::size_t f) {
  require_valid(g);
  if (f >= g.flags.size() || g.is_tail(f)) throw Error("not-an-edge", "flag " + std::to_string(f) + " is not on an edge");
  WGraph out = g;
  const std::size_t p = g.partner(f);
  out.flags[f].partner = f;
  out.flags[p].partner = p;
  out.flags[f].weight = out.flags[p].weight = Rational(1);
  return out;
}

WGraph divisor_graph(const WeightData& weights, Subset I, const TargetProfile& profile, const CurveClass& beta) {
  WGraph g(profile);
  const std::size_t v1 = g.add_vertex(0);
  const std::size_t v2 = g.add_vertex(0, beta);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    g.add_tail(contains(I, i) ? v1 : v2, weights.weight(i), weights.label(i));
  }
  g.add_edge(v1, v2);
  return g;
}

}  // namespace wsm
