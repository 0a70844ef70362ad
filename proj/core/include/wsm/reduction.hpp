#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wsm/graph.hpp"
#include "wsm/weights.hpp"

namespace wsm {

struct ReductionPath {
  WeightData from;
  WeightData to;
  /// Descending, all in (0,1).
  std::vector<Rational> breakpoints;
  /// Walls hit at breakpoints[i], in (size, lex) order.
  std::vector<std::vector<Subset>> crossed_walls;
};

/// lambda * a + (1 - lambda) * b.
WeightData interpolate(const WeightData& a, const WeightData& b, const Rational& lambda);

/// Throws "incomparable" unless a >= b on the same labels.
ReductionPath reduction_path(const WeightData& a, const WeightData& b);

struct ContractedDivisor {
  Subset I = 0;
  Subset J = 0;
  bool is_exceptional = false;
  /// sum_I b == 1: the target weight lies on the wall.
  bool on_wall = false;

  friend bool operator==(const ContractedDivisor&, const ContractedDivisor&) = default;
};

/// Every I with sum_I a > 1 >= sum_I b, in (size, lex) order.
std::vector<ContractedDivisor> contracted_divisors(const WeightData& a, const WeightData& b);

struct ReductionClass {
  enum class Kind { isomorphism, blowup, general };
  Kind kind = Kind::isomorphism;
  /// Centre of the blow-up.
  Subset I = 0;

  friend bool operator==(const ReductionClass&, const ReductionClass&) = default;
};

std::string to_string(ReductionClass::Kind kind);
/// "isomorphism", "blowup({2,3,4})" or "general".
std::string describe(const ReductionClass& c, const WeightData& labels);

ReductionClass classify_reduction(const WeightData& a, const WeightData& b);

/// Lowers the tail weights to b (matched by tail label) and contracts the
/// vertices that become unstable. Unlike stabilize(), the tails of a
/// contracted vertex are kept and moved to its neighbour.
WGraph reduce_graph(const WGraph& g, const WeightData& b);

/// Removes a tail and contracts whatever becomes unstable, keeping tails.
WGraph forget_tail(const WGraph& g, std::size_t tail);

/// Replaces tails at one vertex by a single tail carrying the summed weight.
/// The new tail takes the place of the first one; labels are joined with '+'.
WGraph combine_tails(const WGraph& g, const std::vector<std::size_t>& group);

/// Joins two weight-one tails of different graphs into an edge.
WGraph glue(const WGraph& g1, std::size_t t1, const WGraph& g2, std::size_t t2);
/// Joins two weight-one tails of the same graph into an edge.
WGraph self_glue(const WGraph& g, std::size_t t1, std::size_t t2);

/// Splits the edge through flag f into two weight-one tails.
WGraph cut_edge(const WGraph& g, std::size_t f);

/// Genus-0 two-vertex graph of D_{I,J}: tails I on a class-0 vertex, tails J
/// and the class beta on the other.
WGraph divisor_graph(const WeightData& weights, Subset I, const TargetProfile& profile, const CurveClass& beta);

}  // namespace wsm
