#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "wsm/category.hpp"
#include "wsm/graph.hpp"

using namespace wsm;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }
CurveClass C(std::vector<std::int64_t> c) { return CurveClass(std::move(c)); }

WGraph tripod() {
  WGraph g(TargetProfile::point());
  const auto v = g.add_vertex(0);
  for (int i = 0; i < 3; ++i) g.add_tail(v, Rational(1), std::to_string(i + 1));
  return g;
}

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs) {
    if (v.code == code) return true;
  }
  return false;
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(tripod()).empty());
  WGraph g = tripod();
  const auto v = g.add_vertex(0);
  const auto [f, h] = g.add_edge(0, v);
  g.flags[f].weight = Q("1/2");
  EXPECT_TRUE(has_code(validate(g), "edge-flag-weight"));
  WGraph broken = tripod();
  broken.flags[0].partner = 1;
  EXPECT_TRUE(has_code(validate(broken), "involution"));
  WGraph bad_rank = tripod();
  bad_rank.vertices[0].cls = C({1});
  EXPECT_TRUE(has_code(validate(bad_rank), "rank"));
  (void)h;
}

TEST(Stats, Examples) {
  WGraph line(TargetProfile::projective_space(3));
  line.add_vertex(0, C({1}));
  EXPECT_EQ(stats(line).vdim, 4);
  for (int n = 3; n <= 7; ++n) {
    WGraph g(TargetProfile::point());
    const auto v = g.add_vertex(0);
    for (int i = 0; i < n; ++i) g.add_tail(v);
    const GraphStats s = stats(g);
    EXPECT_EQ(s.euler, 1);
    EXPECT_EQ(s.vdim, n - 3);
  }
  WGraph two(TargetProfile::point());
  const auto a = two.add_vertex(0), b = two.add_vertex(0);
  for (int i = 0; i < 2; ++i) two.add_tail(a);
  for (int i = 0; i < 2; ++i) two.add_tail(b);
  two.add_edge(a, b);
  const GraphStats s = stats(two);
  EXPECT_EQ(s.betti1, 0);
  EXPECT_EQ(s.euler, 1);
  EXPECT_EQ(s.genus_total, 0);
  EXPECT_EQ(s.vdim, 4 - 3 - 1);
}

TEST(Stats, LoopsRaiseGenus) {
  WGraph g(TargetProfile::point());
  const auto v = g.add_vertex(1);
  g.add_tail(v);
  g.add_edge(v, v);
  const GraphStats s = stats(g);
  EXPECT_EQ(s.betti1, 1);
  EXPECT_EQ(s.genus_total, 2);
}

TEST(Stability, Examples) {
  WGraph chain(TargetProfile::point());
  const auto a = chain.add_vertex(1), b = chain.add_vertex(0), c = chain.add_vertex(1);
  chain.add_edge(a, b);
  chain.add_edge(b, c);
  EXPECT_FALSE(is_vertex_stable(chain, b));
  WGraph loop(TargetProfile::point());
  const auto v = loop.add_vertex(0);
  loop.add_edge(v, v);
  EXPECT_FALSE(is_stable(loop));
  WGraph light(TargetProfile::point());
  light.add_tail(light.add_vertex(1), Q("1/10"));
  EXPECT_TRUE(is_stable(light));
}

TEST(Stabilize, StableInputUnchanged) {
  const auto r = stabilize(tripod());
  EXPECT_EQ(r.graph, tripod());
  EXPECT_TRUE(r.trace.empty());
}

TEST(Stabilize, SplicesChain) {
  WGraph g(TargetProfile::point());
  const auto a = g.add_vertex(1), b = g.add_vertex(0), c = g.add_vertex(1);
  g.add_tail(a);
  g.add_tail(c);
  g.add_edge(a, b);
  g.add_edge(b, c);
  const auto r = stabilize(g);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].kind, StabilizationStep::Kind::splice_vertex);
  EXPECT_EQ(r.graph.vertices.size(), 2u);
  EXPECT_EQ(r.graph.n_edges(), 1u);
  EXPECT_NE(r.graph.vertex_of(r.graph.edges()[0].first), r.graph.vertex_of(r.graph.edges()[0].second));
}

TEST(Stabilize, PruneDropsTails) {
  WGraph g(TargetProfile::point());
  const auto v1 = g.add_vertex(0), v2 = g.add_vertex(1);
  const auto t = g.add_tail(v1, Q("1/2"), "x");
  g.add_edge(v1, v2);
  const auto r = stabilize(g);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].kind, StabilizationStep::Kind::prune_vertex);
  EXPECT_EQ(r.trace[0].dropped_tails, std::vector<std::size_t>{t});
  ASSERT_EQ(r.graph.vertices.size(), 1u);
  ASSERT_EQ(r.graph.flags.size(), 1u);
  EXPECT_TRUE(r.graph.is_tail(0));
  EXPECT_EQ(r.graph.flags[0].weight, Rational(1));
  EXPECT_EQ(r.vertex_map, std::vector<std::size_t>{v2});
}

TEST(Stabilize, SuiteIdempotentStableShrinking) {
  std::mt19937_64 rng(101);
  wsm::testing::GraphSpec spec{6, 10, 1, 1, 1, 2, {1, 2, 3, 4}, false};
  for (int i = 0; i < 3000; ++i) {
    const WGraph g = wsm::testing::random_graph(rng, spec);
    ASSERT_TRUE(validate(g).empty());
    const auto r = stabilize(g);
    EXPECT_TRUE(is_stable(r.graph));
    EXPECT_TRUE(wsm::testing::oracle_stable(r.graph));
    EXPECT_EQ(stabilize(r.graph).graph, r.graph);
    EXPECT_TRUE(stabilize(r.graph).trace.empty());
    EXPECT_LE(r.graph.vertices.size() + r.graph.flags.size() + r.trace.size(), g.vertices.size() + g.flags.size());
  }
}

TEST(Stabilize, ConfluentOverStepOrders) {
  std::mt19937_64 rng(202);
  wsm::testing::GraphSpec spec{5, 10, 1, 1, 1, 2, {1, 2}, false};
  int explored = 0;
  for (int i = 0; i < 600; ++i) {
    const WGraph g = wsm::testing::random_graph(rng, spec);
    if (unstable_vertices(g).size() > 4) continue;
    std::map<std::string, std::set<std::string>> memo;
    const auto results = wsm::testing::stabilization_outcomes(g, memo);
    EXPECT_EQ(results.size(), 1u) << describe(g);
    EXPECT_EQ(*results.begin(), canonical_key(stabilize(g).graph));
    ++explored;
  }
  EXPECT_GT(explored, 300);
}

TEST(Stabilize, MapsPointIntoInput) {
  std::mt19937_64 rng(303);
  wsm::testing::GraphSpec spec{5, 9, 1, 1, 1, 2, {1, 2}, false};
  for (int i = 0; i < 500; ++i) {
    const WGraph g = wsm::testing::random_graph(rng, spec);
    const auto r = stabilize(g);
    for (std::size_t v = 0; v < r.graph.vertices.size(); ++v) {
      EXPECT_EQ(r.graph.vertices[v], g.vertices[r.vertex_map[v]]);
    }
    for (std::size_t f = 0; f < r.graph.flags.size(); ++f) {
      EXPECT_EQ(r.vertex_map[r.graph.vertex_of(f)], g.vertex_of(r.flag_map[f]));
    }
    const auto m = stabilization_morphism(g);
    EXPECT_TRUE(validate_comb(m).empty()) << describe(g);
  }
}

// Every combinatorial morphism from a stable graph into tau factors through
// the stabilization of tau in exactly one way.
TEST(Stabilize, UniversalProperty) {
  std::mt19937_64 rng(404);
  wsm::testing::GraphSpec small_tau{3, 6, 1, 0, 0, 0, {1, 2}, false};
  wsm::testing::GraphSpec small_sigma{2, 4, 1, 0, 0, 0, {1, 2}, false};
  int morphisms = 0;
  for (int i = 0; i < 400; ++i) {
    const WGraph tau = wsm::testing::random_graph(rng, small_tau);
    const WGraph sigma = wsm::testing::random_stable_graph(rng, small_sigma);
    const auto s = stabilization_morphism(tau);
    for (const auto& m : wsm::testing::enumerate_combs(sigma, tau)) {
      ++morphisms;
      int factorizations = 0;
      for (const auto& h : wsm::testing::enumerate_combs(sigma, s.source)) {
        const auto composite = compose_comb(s, h);
        if (composite.flag_map == m.flag_map && composite.vertex_map == m.vertex_map) ++factorizations;
      }
      EXPECT_EQ(factorizations, 1) << describe(sigma) << " -> " << describe(tau);
    }
  }
  EXPECT_GT(morphisms, 100);
}

TEST(Stats, InvariantUnderRelabeling) {
  std::mt19937_64 rng(505);
  wsm::testing::GraphSpec spec{5, 9, 2, 2, 1, 2, {1, 2, 3}, false};
  for (int i = 0; i < 500; ++i) {
    const WGraph g = wsm::testing::random_graph(rng, spec);
    EXPECT_EQ(stats(wsm::testing::shuffle(rng, g)), stats(g));
    EXPECT_EQ(stats(canonical_form(g).graph), stats(g));
  }
}

TEST(Dot, LabelsVerticesAndTails) {
  const std::string dot = to_dot(tripod());
  EXPECT_NE(dot.find("g=0"), std::string::npos);
  EXPECT_NE(dot.find("w=1"), std::string::npos);
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
}
