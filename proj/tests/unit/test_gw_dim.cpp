#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "wsm/error.hpp"
#include "wsm/gw_dim.hpp"

using namespace wsm;

namespace {

CurveClass C(std::int64_t x) { return CurveClass(std::vector<std::int64_t>{x}); }

WeightData ones(std::size_t n) { return WeightData::from_weights(std::vector<Rational>(n, Rational(1))); }

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

}  // namespace

TEST(Vdim, Examples) {
  EXPECT_EQ(vdim_moduli(0, WeightData(), C(1), TargetProfile::projective_space(3)), 4);
  for (std::size_t n = 3; n <= 7; ++n) {
    EXPECT_EQ(vdim_moduli(0, ones(n), CurveClass(0), TargetProfile::point()), static_cast<std::int64_t>(n) - 3);
  }
  EXPECT_EQ(vdim_moduli(1, WeightData(), C(1), TargetProfile{3, {0}}), 0);
}

TEST(Vdim, Errors) {
  EXPECT_EQ(code_of([] { vdim_moduli(0, ones(2), CurveClass(0), TargetProfile::point()); }), "inadmissible");
  EXPECT_EQ(code_of([] { vdim_moduli(0, ones(3), C(1), TargetProfile::point()); }), "rank");
}

TEST(Vdim, WeightIndependent) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    std::vector<Rational> w;
    for (std::size_t k = 0; k < n; ++k) w.push_back(Rational(std::uniform_int_distribution<std::int64_t>(1, 10)(rng)) / Rational(10));
    const int g = std::uniform_int_distribution<int>(0, 2)(rng);
    const CurveClass beta = C(std::uniform_int_distribution<std::int64_t>(0, 3)(rng));
    const TargetProfile p = TargetProfile::projective_space(std::uniform_int_distribution<int>(1, 4)(rng));
    const WeightData weights = WeightData::from_weights(w);
    if (!is_admissible({g, weights, beta}) || !is_admissible({g, ones(n), beta})) continue;
    EXPECT_EQ(vdim_moduli(g, weights, beta, p), vdim_moduli(g, ones(n), beta, p));
  }
}

// Splitting along an edge: vdim(τ) equals the sum over both sides, each with
// the edge as an extra weight-1 label, minus dim V.
TEST(Vdim, GluingAdditivity) {
  std::mt19937_64 rng(62);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const TargetProfile p = TargetProfile::projective_space(std::uniform_int_distribution<int>(1, 4)(rng));
    WGraph g(p);
    std::uniform_int_distribution<int> genus(0, 2), tails(0, 3);
    std::uniform_int_distribution<std::int64_t> cls(0, 2);
    const auto a = g.add_vertex(genus(rng), C(cls(rng)));
    const auto b = g.add_vertex(genus(rng), C(cls(rng)));
    const int na = tails(rng), nb = tails(rng);
    for (int k = 0; k < na; ++k) g.add_tail(a, Rational(1), "a" + std::to_string(k));
    for (int k = 0; k < nb; ++k) g.add_tail(b, Rational(1), "b" + std::to_string(k));
    g.add_edge(a, b);
    if (!is_stable(g)) continue;
    const auto side = [&](std::size_t v, int n) {
      return vdim_moduli(g.vertices[v].genus, ones(static_cast<std::size_t>(n) + 1), g.vertices[v].cls, p);
    };
    EXPECT_EQ(stats(g).vdim, side(a, na) + side(b, nb) - p.dim_v);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Gate, Examples) {
  const TargetProfile p3 = TargetProfile::projective_space(3);
  const WeightData two = WeightData::parse("1,1");
  const GateResult lines = dimension_gate(0, two, C(1), p3, {{3, 0, "1"}, {3, 0, "2"}});
  EXPECT_TRUE(lines.passes);
  EXPECT_EQ(lines.vdim, 6);
  EXPECT_EQ(lines.deficit, 0);
  const GateResult desc = dimension_gate(0, two, C(1), p3, {{3, 1, "1"}, {3, 0, "2"}});
  EXPECT_FALSE(desc.passes);
  EXPECT_EQ(desc.deficit, 1);
  EXPECT_TRUE(dimension_gate(0, ones(3), CurveClass(0), TargetProfile::point(), {}).passes);
  EXPECT_EQ(code_of([&] { dimension_gate(0, two, C(1), p3, {{3, 0, "1"}, {3, 0, "1"}}); }), "duplicate-label");
  EXPECT_EQ(code_of([&] { dimension_gate(0, two, C(1), p3, {{3, 0, "x"}}); }), "unknown-label");
}

TEST(Gate, ParseInsertion) {
  const Insertion a = parse_insertion("p:3");
  EXPECT_EQ(a.weight_label, "p");
  EXPECT_EQ(a.codim, 3);
  EXPECT_EQ(a.descendant_power, 0);
  const Insertion b = parse_insertion("q:2:4");
  EXPECT_EQ(b.codim, 2);
  EXPECT_EQ(b.descendant_power, 4);
  for (const char* bad : {"p", ":3", "p:x", "p:3:", "p:-1", "p:1:2:3"}) {
    EXPECT_EQ(code_of([&] { parse_insertion(bad); }), "bad-insertion") << bad;
  }
}
