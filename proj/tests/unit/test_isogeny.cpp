#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <random>

#include "oracles.hpp"
#include "wsm/category.hpp"
#include "wsm/error.hpp"

using namespace wsm;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }
CurveClass C(std::int64_t x) { return CurveClass(std::vector<std::int64_t>{x}); }

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs) {
    if (v.code == code) return true;
  }
  return false;
}

// Two genus-0 vertices joined by an edge, one weight-1 tail each, over a
// single vertex of class beta.
std::pair<WGraph, Isogeny> split_line(std::int64_t beta) {
  WGraph tp(TargetProfile::projective_space(1));
  const auto a = tp.add_vertex(0), b = tp.add_vertex(0);
  tp.add_tail(a, Rational(1), "p");
  tp.add_tail(b, Rational(1), "q");
  tp.add_edge(a, b);
  WGraph sigma(TargetProfile::projective_space(1));
  const auto v = sigma.add_vertex(0, C(beta));
  sigma.add_tail(v, Rational(1), "p");
  sigma.add_tail(v, Rational(1), "q");
  return {tp, Isogeny{tp, sigma, {0, 1}, {0, 0}}};
}

}  // namespace

TEST(ValidateIsogeny, ContractionsAreIsogenies) {
  std::mt19937_64 rng(31);
  wsm::testing::GraphSpec spec{5, 10, 1, 1, 1, 1, {1, 2, 3}, false};
  for (int i = 0; i < 500; ++i) {
    const WGraph g = wsm::testing::random_stable_graph(rng, spec);
    EXPECT_TRUE(validate_isogeny(isogeny_from_contraction(wsm::testing::random_contraction(rng, g, 0.5))).empty());
  }
}

TEST(ValidateIsogeny, DroppedTails) {
  WGraph tau(TargetProfile::point());
  const auto v = tau.add_vertex(1);
  tau.add_tail(v, Rational(1), "t");
  tau.add_tail(v, Q("1/2"), "s");
  WGraph sigma(TargetProfile::point());
  sigma.add_tail(sigma.add_vertex(1), Q("1/2"), "s");
  EXPECT_TRUE(has_code(validate_isogeny({tau, sigma, {1}, {0}}), "isogeny-4"));

  WGraph light(TargetProfile::point());
  const auto w = light.add_vertex(1);
  light.add_tail(w, Q("1/4"), "a");
  light.add_tail(w, Q("1/2"), "s");
  EXPECT_TRUE(validate_isogeny({light, sigma, {1}, {0}}).empty());
}

TEST(ValidateIsogeny, GenusAdditivity) {
  WGraph tau(TargetProfile::point());
  const auto a = tau.add_vertex(1), b = tau.add_vertex(1);
  tau.add_edge(a, b);
  WGraph sigma(TargetProfile::point());
  sigma.add_vertex(3);
  EXPECT_TRUE(has_code(validate_isogeny({tau, sigma, {}, {0, 0}}), "isogeny-2"));
  sigma.vertices[0].genus = 2;
  EXPECT_TRUE(validate_isogeny({tau, sigma, {}, {0, 0}}).empty());
}

TEST(AbsoluteStabilization, Examples) {
  WGraph tripod(TargetProfile::point());
  const auto v = tripod.add_vertex(0);
  for (int i = 0; i < 3; ++i) tripod.add_tail(v);
  EXPECT_EQ(absolute_stabilization(tripod).graph, tripod);
  EXPECT_TRUE(absolute_stabilization(tripod).trace.empty());

  WGraph g(TargetProfile::projective_space(1));
  const auto x = g.add_vertex(1), y = g.add_vertex(0, C(1));
  g.add_tail(x);
  g.add_edge(x, y);
  EXPECT_TRUE(is_stable(g));
  const auto abs = absolute_stabilization(g);
  ASSERT_EQ(abs.graph.vertices.size(), 1u);
  EXPECT_EQ(abs.graph.vertices[0].genus, 1);
  EXPECT_EQ(abs.vertex_map, std::vector<std::size_t>{x});
}

TEST(VStructures, SplitOfDegreeTwo) {
  const auto [tp, phi] = split_line(2);
  const auto found = v_structures(tp, phi);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], (std::vector<CurveClass>{C(1), C(1)}));
  EXPECT_EQ(found, wsm::testing::brute_force_v_structures(tp, phi));
}

TEST(VStructures, DegreeOneHasNone) {
  const auto [tp, phi] = split_line(1);
  EXPECT_TRUE(v_structures(tp, phi).empty());
  EXPECT_TRUE(wsm::testing::brute_force_v_structures(tp, phi).empty());
}

TEST(CartesianPullback, IdentityGivesSigma) {
  std::mt19937_64 rng(32);
  wsm::testing::GraphSpec spec{4, 8, 1, 0, 1, 1, {1, 2, 3}, true};
  for (int i = 0; i < 200; ++i) {
    WGraph sigma = wsm::testing::random_stable_graph(rng, spec);
    for (auto& v : sigma.vertices) v.cls = C(std::uniform_int_distribution<std::int64_t>(0, 2)(rng));
    const WGraph ss = absolute_stabilization(sigma).graph;
    const auto out = cartesian_isogeny_pullback(sigma, isogeny_from_contraction(identity_contraction(ss)));
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].tau, sigma);
  }
}

TEST(CartesianPullback, RejectsWrongSigma) {
  WGraph sigma(TargetProfile::projective_space(1));
  const auto v = sigma.add_vertex(1);
  sigma.add_tail(v);
  WGraph other = sigma;
  other.vertices[0].genus = 2;
  EXPECT_THROW(cartesian_isogeny_pullback(sigma, isogeny_from_contraction(identity_contraction(other))), Error);
}

TEST(CartesianPullback, MatchesBruteForce) {
  std::mt19937_64 rng(33);
  int cases = 0, nonempty = 0, long_parts = 0;
  for (int i = 0; i < 4000 && cases < 400; ++i) {
    const auto c = wsm::testing::random_isogeny_case(rng);
    if (!c) continue;
    ++cases;
    const auto frame = isogeny_pullback_frame(c->sigma, c->phi);
    EXPECT_EQ(v_structures(frame.tau_prime, frame.phi_prime),
              wsm::testing::brute_force_v_structures(frame.tau_prime, frame.phi_prime))
        << describe(c->sigma);
    if (frame.tau_prime.vertices.size() > c->phi.source.vertices.size()) ++long_parts;
    const auto out = cartesian_isogeny_pullback(c->sigma, c->phi);
    if (!out.empty()) ++nonempty;
    for (const auto& comp : out) {
      EXPECT_TRUE(is_stable(comp.tau));
      EXPECT_TRUE(validate_isogeny(comp.phi).empty());
      EXPECT_TRUE(isomorphic(absolute_stabilization(comp.tau).graph, c->phi.source)) << describe(comp.tau);
      EXPECT_EQ(stats(comp.tau).beta_total, stats(c->sigma).beta_total);
      EXPECT_EQ(stats(comp.tau).genus_total, stats(c->sigma).genus_total);
    }
  }
  EXPECT_GE(cases, 200);
  EXPECT_GT(nonempty, 50);
  EXPECT_GT(long_parts, 50);
}
