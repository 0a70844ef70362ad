#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wsm/graph.hpp"

namespace wsm {

/// Monoid map N^a -> N^b as a b x a matrix of non-negative integers.
/// The empty matrix stands for the identity.
using ClassMap = std::vector<std::vector<std::int64_t>>;

CurveClass apply(const ClassMap& xi, const CurveClass& c);
/// (first after second): the map c -> first(second(c)).
ClassMap compose_maps(const ClassMap& first, const ClassMap& second);

/// a : source -> target. The class map goes the other way, from target
/// classes to source classes.
struct CombinatorialMorphism {
  WGraph source;
  WGraph target;
  std::vector<std::size_t> flag_map;
  std::vector<std::size_t> vertex_map;
  ClassMap xi;
};

/// phi : source -> target, collapsing the source edges outside the image of flag_inj.
struct Contraction {
  WGraph source;
  WGraph target;
  std::vector<std::size_t> flag_inj;     // F_target -> F_source
  std::vector<std::size_t> vertex_surj;  // V_source -> V_target
};

/// (comb, contraction) with comb : tau' -> tau and contraction : tau' -> sigma,
/// a morphism tau -> sigma.
struct GraphMorphism {
  CombinatorialMorphism comb;
  Contraction contraction;

  const WGraph& source() const { return comb.target; }
  const WGraph& target() const { return contraction.target; }
  const WGraph& middle() const { return comb.source; }
};

struct Isogeny {
  WGraph source;
  WGraph target;
  std::vector<std::size_t> flag_inj;     // F_target -> F_source
  std::vector<std::size_t> vertex_surj;  // V_source -> V_target
};

/// Violations carry the failing condition number in the code, e.g. "comb-2".
std::vector<Violation> validate_comb(const CombinatorialMorphism& m);
std::vector<Violation> validate_contraction(const Contraction& c);
std::vector<Violation> validate_morphism(const GraphMorphism& m);
std::vector<Violation> validate_isogeny(const Isogeny& i);

CombinatorialMorphism identity_comb(const WGraph& g);
Contraction identity_contraction(const WGraph& g);
GraphMorphism identity_morphism(const WGraph& g);

/// first o second, for second : A -> B and first : B -> C.
CombinatorialMorphism compose_comb(const CombinatorialMorphism& first, const CombinatorialMorphism& second);
Contraction compose_contraction(const Contraction& first, const Contraction& second);

/// Collapses the given edges (each named by one of its flags).
Contraction contract_edges(const WGraph& g, const std::vector<std::size_t>& edge_flags);
Contraction contract_edge(const WGraph& g, std::size_t flag);

/// The morphism tau -> sigma given by a contraction tau -> sigma alone.
GraphMorphism from_contraction(const Contraction& c);
/// The morphism tau -> sigma given by a combinatorial morphism sigma -> tau alone.
GraphMorphism from_comb(const CombinatorialMorphism& a);

/// The combinatorial morphism g^s -> g produced by stabilize.
CombinatorialMorphism stabilization_morphism(const WGraph& g);

struct StablePullback {
  WGraph pi;
  Contraction psi;            // pi -> rho
  CombinatorialMorphism b;    // pi -> sigma
};

/// Completes a : rho -> tau and phi : sigma -> tau to a commuting square.
/// phi is factored into single-edge steps: current loops first, then the
/// edge with the lowest flag index. An explicit order (one sigma flag per
/// collapsed edge) may be given instead.
StablePullback stable_pullback(const CombinatorialMorphism& a, const Contraction& phi,
                               const std::optional<std::vector<std::size_t>>& order = std::nullopt);

/// m2 o m1 for m1 : tau -> sigma and m2 : sigma -> rho.
GraphMorphism compose(const GraphMorphism& m2, const GraphMorphism& m1);

/// Same source and target, and the middle graphs are isomorphic compatibly
/// with both structure maps.
bool equivalent(const GraphMorphism& x, const GraphMorphism& y);

struct AbsoluteStabilization {
  WGraph graph;  // all classes zero
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> flag_map;
  std::vector<StabilizationStep> trace;
};

/// Forgets the classes, then stabilizes.
AbsoluteStabilization absolute_stabilization(const WGraph& g);

/// Whether the one-vertex graph at v, with dropped_tails removed one at a
/// time, is a contraction of small tails. Edge flags count as weight-one tails.
bool small_tail_contraction(const WGraph& g, std::size_t v, const std::vector<std::size_t>& dropped_tails);

Isogeny isogeny_from_contraction(const Contraction& c);

struct IsogenyPullbackFrame {
  WGraph tau_prime;        // classes zero
  Isogeny phi_prime;       // tau' -> sigma (target carries sigma's classes)
  CombinatorialMorphism a; // tau^s -> tau'
};

/// Replaces edges and tails of tau^s by the long edges and long tails of sigma.
/// Throws "sigma-mismatch" when phi's target is not the absolute stabilization of sigma.
IsogenyPullbackFrame isogeny_pullback_frame(const WGraph& sigma, const Isogeny& phi);

/// All class assignments on tau' additive over the fibres of phi' that make
/// every vertex stable and phi' an isogeny, in lexicographic order of the
/// assignment.
std::vector<std::vector<CurveClass>> v_structures(const WGraph& tau_prime, const Isogeny& phi_prime);

struct PullbackComponent {
  WGraph tau;
  CombinatorialMorphism a;  // tau^s -> tau_i
  Isogeny phi;              // tau_i -> sigma
  std::vector<CurveClass> classes;
};

std::vector<PullbackComponent> cartesian_isogeny_pullback(const WGraph& sigma, const Isogeny& phi);

}  // namespace wsm
