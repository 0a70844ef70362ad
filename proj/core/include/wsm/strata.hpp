#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wsm/graph.hpp"
#include "wsm/weights.hpp"

namespace wsm {

struct StrataQuery {
  int genus_total = 0;
  WeightData weights;
  CurveClass beta_total;
  TargetProfile profile;
  int max_edges = 0;
};

/// Connected stable graphs with the query's data and at most max_edges edges,
/// up to isomorphism. Canonical representatives, ordered by edge count and
/// then canonical key.
std::vector<WGraph> enumerate_strata(const StrataQuery& q);

struct Cover {
  std::size_t from = 0;  // the stratum with one more edge
  std::size_t to = 0;
  std::size_t flag = 0;  // a flag of the contracted edge in nodes[from]

  friend bool operator==(const Cover&, const Cover&) = default;
};

struct StratumPoset {
  std::vector<WGraph> nodes;
  std::vector<Cover> covers;
};

/// Covers between members given by contracting one edge; one cover per pair.
StratumPoset contraction_poset(const std::vector<WGraph>& strata);

/// Graphviz text with one node per stratum labelled "codim/vdim".
std::string poset_dot(const StratumPoset& poset);

struct ChamberDiffEntry {
  std::size_t source = 0;
  WGraph image;
  bool contracted = false;
};

struct ChamberDiff {
  std::vector<WGraph> strata;
  std::vector<ChamberDiffEntry> entries;
  /// Source indices grouped by image, in order of first appearance.
  std::vector<std::vector<std::size_t>> fibres;
};

/// Images of the strata under reduce_graph to b.
ChamberDiff chamber_diff(const std::vector<WGraph>& strata, const WeightData& b);
/// Strata of q with weights a, reduced to b.
ChamberDiff chamber_diff(const StrataQuery& q, const WeightData& a, const WeightData& b);

}  // namespace wsm
