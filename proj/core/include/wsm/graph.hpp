#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsm/rational.hpp"
#include "wsm/weights.hpp"

namespace wsm {

struct Vertex {
  int genus = 0;
  CurveClass cls;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A half-edge. A tail is a flag that is its own partner.
struct Flag {
  std::size_t vertex = 0;
  std::size_t partner = 0;
  Rational weight{1};
  std::string label;

  friend bool operator==(const Flag&, const Flag&) = default;
};

/// Weighted modular V-graph, stored by flags: the boundary map is
/// Flag::vertex and the involution is Flag::partner.
struct WGraph {
  TargetProfile profile;
  std::vector<Vertex> vertices;
  std::vector<Flag> flags;

  WGraph() = default;
  explicit WGraph(TargetProfile p) : profile(std::move(p)) {}

  std::size_t add_vertex(int genus, CurveClass cls);
  std::size_t add_vertex(int genus = 0);
  std::size_t add_tail(std::size_t v, Rational weight = Rational(1), std::string label = {});
  std::pair<std::size_t, std::size_t> add_edge(std::size_t v, std::size_t w);

  bool is_tail(std::size_t f) const { return flags[f].partner == f; }
  std::size_t partner(std::size_t f) const { return flags[f].partner; }
  std::size_t vertex_of(std::size_t f) const { return flags[f].vertex; }

  std::vector<std::size_t> tails() const;
  /// Edges as (f, partner(f)) with f < partner(f), in flag order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> flags_at(std::size_t v) const;
  std::vector<std::size_t> tails_at(std::size_t v) const;
  /// Non-tail flags at v; a loop contributes two.
  std::size_t edge_valence(std::size_t v) const;
  CurveClass zero_class() const { return CurveClass(profile.rank()); }

  std::size_t n_tails() const;
  std::size_t n_edges() const;
  std::size_t n_components() const;
  /// Component index of every vertex, numbered in order of first vertex.
  std::vector<std::size_t> components() const;
  /// Tail weights as WeightData, labels from the tails or "t<flag>" if unlabelled.
  WeightData tail_weights() const;
  /// Tail flag with the given label; throws "unknown-label".
  std::size_t tail_by_label(const std::string& label) const;

  friend bool operator==(const WGraph&, const WGraph&) = default;
};

struct Violation {
  std::string code;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Structural checks: involution, flag/vertex ranges, edge flags of weight 1,
/// tail weights in (0,1], genus >= 0, class ranks.
std::vector<Violation> validate(const WGraph& g);
/// Throws Error("invalid-graph") listing all violations.
void require_valid(const WGraph& g);

struct GraphStats {
  CurveClass beta_total;
  std::int64_t euler = 0;
  std::int64_t genus_total = 0;
  std::int64_t vdim = 0;
  std::size_t n_tails = 0;
  std::size_t n_edges = 0;
  std::size_t n_components = 0;
  std::int64_t betti1 = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats stats(const WGraph& g);

bool is_vertex_stable(const WGraph& g, std::size_t v);
bool is_stable(const WGraph& g);
std::vector<std::size_t> unstable_vertices(const WGraph& g);

struct StabilizationStep {
  enum class Kind { remove_component, prune_vertex, splice_vertex };
  Kind kind = Kind::remove_component;
  /// Indices refer to the graph the step was applied to.
  std::size_t vertex = 0;
  std::vector<std::size_t> removed_flags;
  /// Tails deleted together with a pruned vertex.
  std::vector<std::size_t> dropped_tails;
  /// Partner flag that became a weight-one tail (prune only).
  std::optional<std::size_t> new_tail;
  /// The two partner flags joined into one edge (splice only).
  std::optional<std::pair<std::size_t, std::size_t>> spliced;
};

std::string to_string(StabilizationStep::Kind kind);

struct StepResult {
  WGraph graph;
  StabilizationStep step;
  /// New index -> index in the input.
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> flag_map;
};

/// One stabilization step at an unstable vertex v. Throws if v is stable.
StepResult apply_stabilization_step(const WGraph& g, std::size_t v);

struct StabilizationResult {
  WGraph graph;
  /// Steps in order; the indices in each step refer to the input graph.
  std::vector<StabilizationStep> trace;
  /// Stable index -> input index.
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> flag_map;
};

/// Repeats the three stabilization steps at the lowest-index unstable vertex.
/// Each step lowers |V| + |F|.
StabilizationResult stabilize(const WGraph& g);

struct CanonicalForm {
  WGraph graph;
  /// Canonical index -> original index.
  std::vector<std::size_t> vertex_perm;
  std::vector<std::size_t> flag_perm;
  /// Decorations carried along, in canonical order.
  std::vector<std::int64_t> vertex_colors;
  std::vector<std::int64_t> flag_colors;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.graph == b.graph && a.vertex_colors == b.vertex_colors && a.flag_colors == b.flag_colors;
  }
};

/// Canonical representative of the isomorphism class. Optional integer
/// colours on vertices and flags must be preserved by isomorphisms.
CanonicalForm canonical_form(const WGraph& g, const std::vector<std::int64_t>* vertex_colors = nullptr,
                             const std::vector<std::int64_t>* flag_colors = nullptr);

bool isomorphic(const WGraph& a, const WGraph& b);

/// Text encoding of the canonical form; equal keys mean isomorphic graphs.
std::string canonical_key(const WGraph& g);

/// Reorders vertices and flags; perm maps new index -> old index.
WGraph relabel(const WGraph& g, const std::vector<std::size_t>& vertex_perm, const std::vector<std::size_t>& flag_perm);

/// Disjoint union; flags and vertices of b are shifted after those of a.
WGraph disjoint_union(const WGraph& a, const WGraph& b);

/// Drops vertices and flags not selected, compacting indices. Partners of
/// removed flags must also be removed or the result is invalid.
WGraph induced(const WGraph& g, const std::vector<bool>& keep_vertex, const std::vector<bool>& keep_flag,
               std::vector<std::size_t>* vertex_map = nullptr, std::vector<std::size_t>* flag_map = nullptr);

/// Graphviz text of |tau|: vertices labelled "g=.., β=..", tails as points "w=..".
std::string to_dot(const WGraph& g, const std::string& name = "tau");

/// Compact one-line description for diagnostics.
std::string describe(const WGraph& g);

}  // namespace wsm
