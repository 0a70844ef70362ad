#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wsm/category.hpp"
#include "wsm/error.hpp"

using namespace wsm;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }

void expect_square(const StablePullback& sp, const CombinatorialMorphism& a, const Contraction& phi) {
  EXPECT_TRUE(validate_contraction(sp.psi).empty());
  EXPECT_TRUE(validate_comb(sp.b).empty()) << describe(sp.pi);
  EXPECT_TRUE(is_stable(sp.pi)) << describe(sp.pi);
  EXPECT_EQ(sp.psi.target, a.source);
  EXPECT_EQ(sp.b.target, phi.source);
  for (std::size_t w = 0; w < sp.pi.vertices.size(); ++w) {
    EXPECT_EQ(a.vertex_map[sp.psi.vertex_surj[w]], phi.vertex_surj[sp.b.vertex_map[w]]);
  }
}

// sigma: v1 (g=0) carrying t and s, v2 (g=1) carrying u, joined by one edge.
struct PullbackSetup {
  WGraph sigma{TargetProfile::point()};
  Contraction phi;
};

PullbackSetup two_vertex(const char* s_weight, const char* u_weight) {
  PullbackSetup out;
  const auto v1 = out.sigma.add_vertex(0), v2 = out.sigma.add_vertex(1);
  out.sigma.add_tail(v1, Rational(1), "t");
  out.sigma.add_tail(v1, Q(s_weight), "s");
  if (u_weight) out.sigma.add_tail(v2, Q(u_weight), "u");
  out.sigma.add_edge(v1, v2);
  out.phi = contract_edges(out.sigma, {out.sigma.flags.size() - 1});
  return out;
}

}  // namespace

TEST(StablePullback, IdentityContraction) {
  std::mt19937_64 rng(21);
  wsm::testing::GraphSpec spec{4, 9, 1, 1, 1, 2, {1, 2, 3}, false};
  for (int i = 0; i < 200; ++i) {
    const WGraph tau = wsm::testing::random_stable_graph(rng, spec);
    const auto a = wsm::testing::random_comb_into(rng, tau);
    const auto sp = stable_pullback(a, identity_contraction(tau));
    EXPECT_EQ(sp.pi, a.source);
    EXPECT_EQ(sp.b.flag_map, a.flag_map);
    EXPECT_EQ(sp.b.vertex_map, a.vertex_map);
    EXPECT_EQ(sp.psi.vertex_surj, identity_contraction(a.source).vertex_surj);
  }
}

TEST(StablePullback, SplitCarriesTails) {
  const PullbackSetup s = two_vertex("1/2", nullptr);
  const WGraph& tau = s.phi.target;
  ASSERT_EQ(tau.vertices.size(), 1u);
  EXPECT_EQ(tau.vertices[0].genus, 1);
  // rho: tau with s split into two quarter tails.
  WGraph rho(TargetProfile::point());
  const auto v = rho.add_vertex(1);
  rho.add_tail(v, Rational(1), "t");
  rho.add_tail(v, Q("1/4"), "x");
  rho.add_tail(v, Q("1/4"), "y");
  const std::size_t t = tau.tail_by_label("t"), sflag = tau.tail_by_label("s");
  const CombinatorialMorphism a{rho, tau, {t, sflag, sflag}, {0}, {}};
  ASSERT_TRUE(validate_comb(a).empty());
  const auto sp = stable_pullback(a, s.phi);
  expect_square(sp, a, s.phi);
  ASSERT_EQ(sp.pi.vertices.size(), 2u);
  EXPECT_EQ(sp.pi.n_edges(), 1u);
  for (const char* label : {"t", "x", "y"}) {
    const std::size_t f = sp.pi.tail_by_label(label);
    EXPECT_EQ(sp.pi.vertices[sp.pi.vertex_of(f)].genus, 0) << label;
    EXPECT_EQ(sp.b.vertex_map[sp.pi.vertex_of(f)], 0u);
  }
  EXPECT_TRUE(isomorphic(contract_edges(sp.pi, {sp.pi.edges()[0].first}).target, rho));
}

TEST(StablePullback, UnstableSplitKeepsVertex) {
  const PullbackSetup s = two_vertex("1/2", "1/2");
  const WGraph& tau = s.phi.target;
  WGraph rho(TargetProfile::point());
  rho.add_tail(rho.add_vertex(1), Q("1/2"), "u");
  const CombinatorialMorphism a{rho, tau, {tau.tail_by_label("u")}, {0}, {}};
  ASSERT_TRUE(validate_comb(a).empty());
  const auto sp = stable_pullback(a, s.phi);
  expect_square(sp, a, s.phi);
  EXPECT_EQ(sp.pi, rho);
  EXPECT_EQ(sp.b.vertex_map, std::vector<std::size_t>{1});
}

TEST(StablePullback, LoopReattached) {
  WGraph sigma(TargetProfile::point());
  const auto v = sigma.add_vertex(0);
  sigma.add_edge(v, v);
  sigma.add_tail(v, Rational(1), "t");
  const Contraction phi = contract_edge(sigma, 0);
  const auto a = identity_comb(phi.target);
  const auto sp = stable_pullback(a, phi);
  expect_square(sp, a, phi);
  EXPECT_TRUE(isomorphic(sp.pi, sigma));
}

TEST(StablePullback, Mismatch) {
  const PullbackSetup s = two_vertex("1/2", nullptr);
  EXPECT_THROW(stable_pullback(identity_comb(s.sigma), s.phi), Error);
}

TEST(StablePullback, GeneratedSuiteValidates) {
  std::mt19937_64 rng(22);
  wsm::testing::GraphSpec spec{5, 10, 1, 1, 1, 2, {1, 2, 3}, false};
  int split = 0;
  for (int i = 0; i < 1500; ++i) {
    const WGraph sigma = wsm::testing::random_stable_graph(rng, spec);
    const Contraction phi = wsm::testing::random_contraction(rng, sigma, 0.5);
    const auto a = wsm::testing::random_comb_into(rng, phi.target);
    const auto sp = stable_pullback(a, phi);
    expect_square(sp, a, phi);
    if (sp.pi.vertices.size() > a.source.vertices.size()) ++split;
  }
  EXPECT_GT(split, 100);
}

TEST(StablePullback, OrderIndependent) {
  std::mt19937_64 rng(23);
  wsm::testing::GraphSpec spec{5, 10, 1, 1, 1, 2, {1, 2}, false};
  int multi = 0;
  for (int i = 0; i < 800; ++i) {
    const WGraph sigma = wsm::testing::random_stable_graph(rng, spec);
    const Contraction phi = wsm::testing::random_contraction(rng, sigma, 0.6);
    const auto a = wsm::testing::random_comb_into(rng, phi.target);
    std::vector<bool> kept(sigma.flags.size(), false);
    for (std::size_t f : phi.flag_inj) kept[f] = true;
    std::vector<std::size_t> collapsed;
    for (const auto& [f, h] : sigma.edges()) {
      if (!kept[f]) collapsed.push_back(f);
    }
    if (collapsed.size() < 2) continue;
    ++multi;
    const std::string reference = canonical_key(stable_pullback(a, phi).pi);
    for (int k = 0; k < 3; ++k) {
      std::shuffle(collapsed.begin(), collapsed.end(), rng);
      const auto sp = stable_pullback(a, phi, collapsed);
      expect_square(sp, a, phi);
      EXPECT_EQ(canonical_key(sp.pi), reference) << describe(sigma);
    }
  }
  EXPECT_GT(multi, 100);
}

TEST(Compose, Associative) {
  std::mt19937_64 rng(24);
  wsm::testing::GraphSpec spec{4, 9, 1, 1, 1, 2, {1, 2, 3}, false};
  for (int i = 0; i < 400; ++i) {
    const WGraph g = wsm::testing::random_stable_graph(rng, spec);
    const GraphMorphism m1 = wsm::testing::random_morphism_from(rng, g);
    const GraphMorphism m2 = wsm::testing::random_morphism_from(rng, m1.target());
    const GraphMorphism m3 = wsm::testing::random_morphism_from(rng, m2.target());
    const GraphMorphism left = compose(m3, compose(m2, m1));
    const GraphMorphism right = compose(compose(m3, m2), m1);
    EXPECT_TRUE(validate_morphism(left).empty());
    EXPECT_TRUE(validate_morphism(right).empty());
    EXPECT_TRUE(equivalent(left, right)) << describe(g);
  }
}
