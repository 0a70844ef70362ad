#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "wsm/chambers.hpp"
#include "wsm/error.hpp"

using namespace wsm;

namespace {
WeightData W(const char* s) { return WeightData::parse(s); }
}  // namespace

TEST(Signature, Examples) {
  EXPECT_EQ(signature_of(W("1,1,1")).str(), "++++");
  EXPECT_EQ(signature_of(W("1/3,1/3,1/3")).str(), "---0");
  const ChamberSignature s = signature_of(W("1/2,1/2,3/4"));
  EXPECT_EQ(s.side(0b011), Side::on);
  EXPECT_EQ(s.side(0b101), Side::above);
  EXPECT_EQ(s.side(0b110), Side::above);
  EXPECT_EQ(s.side(0b111), Side::above);
  EXPECT_THROW(signature_of(WeightData::parse("0,1", ZeroWeights::allowed)), Error);
}

TEST(SameChamber, Examples) {
  EXPECT_TRUE(same_chamber(W("1,1,1"), W("9/10,9/10,9/10"), WallKind::fine));
  EXPECT_FALSE(same_chamber(W("1,1,1"), W("2/5,2/5,2/5"), WallKind::fine));
  EXPECT_TRUE(same_chamber(W("1,1,1"), W("1,1,1"), WallKind::fine));
  EXPECT_THROW(same_chamber(W("1/2,1/2"), W("1,1"), WallKind::fine), Error);
}

TEST(SameChamber, SegmentBetweenEqualSignaturesStaysInside) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(1, 30);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 200; ++trial) {
    std::vector<Rational> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(Rational(num(rng)) / Rational(30));
      b.push_back(Rational(num(rng)) / Rational(30));
    }
    const WeightData wa = WeightData::from_weights(a), wb = WeightData::from_weights(b);
    if (!is_fine_interior(wa) || !is_fine_interior(wb) || !same_chamber(wa, wb, WallKind::fine)) continue;
    ++checked;
    for (int k = 1; k < 8; ++k) {
      const Rational l = Rational(k) / Rational(8);
      std::vector<Rational> m;
      for (int i = 0; i < 4; ++i) m.push_back(l * a[i] + (Rational(1) - l) * b[i]);
      EXPECT_EQ(signature_of(m), signature_of(a));
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate_chambers(1, WallKind::fine).size(), 1u);
  EXPECT_EQ(enumerate_chambers(2, WallKind::fine).size(), 2u);
  EXPECT_EQ(enumerate_chambers(3, WallKind::fine).size(), 9u);
  EXPECT_EQ(enumerate_chambers(4, WallKind::fine).size(), 96u);
  EXPECT_EQ(enumerate_chambers(2, WallKind::coarse).size(), 1u);
  EXPECT_EQ(enumerate_chambers(3, WallKind::coarse).size(), 2u);
  EXPECT_EQ(enumerate_chambers(4, WallKind::coarse).size(), 17u);
  EXPECT_THROW(enumerate_chambers(7, WallKind::fine), Error);
  EXPECT_THROW(enumerate_chambers(0, WallKind::fine), Error);
}

TEST(Enumerate, WitnessesSoundAndOrderDeterministic) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (WallKind kind : {WallKind::fine, WallKind::coarse}) {
      const auto chambers = enumerate_chambers(n, kind);
      for (std::size_t i = 0; i < chambers.size(); ++i) {
        EXPECT_EQ(signature_of(chambers[i].witness, kind), chambers[i].signature);
        EXPECT_FALSE(chambers[i].signature.has_on());
        for (const auto& x : chambers[i].witness) {
          EXPECT_GT(x, Rational(0));
          EXPECT_LE(x, Rational(1));
        }
        if (i > 0) EXPECT_LT(chambers[i - 1].signature, chambers[i].signature);
      }
    }
  }
}

TEST(Enumerate, MonotoneSignatures) {
  for (const auto& c : enumerate_chambers(4, WallKind::fine)) {
    for (Subset I : candidate_walls(4, WallKind::fine)) {
      if (c.signature.side(I) != Side::above) continue;
      for (Subset J : candidate_walls(4, WallKind::fine)) {
        if ((I & J) == I) EXPECT_EQ(c.signature.side(J), Side::above);
      }
    }
  }
}

TEST(Enumerate, CoarseIsRestrictionOfFine) {
  for (std::size_t n = 3; n <= 4; ++n) {
    std::set<std::string> restricted;
    for (const auto& c : enumerate_chambers(n, WallKind::fine)) restricted.insert(c.signature.restrict_to(WallKind::coarse).str());
    std::set<std::string> coarse;
    for (const auto& c : enumerate_chambers(n, WallKind::coarse)) coarse.insert(c.signature.str());
    EXPECT_EQ(restricted, coarse);
  }
}

TEST(Enumerate, MatchesSamplingOracle) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (WallKind kind : {WallKind::fine, WallKind::coarse}) {
      std::set<std::string> enumerated;
      for (const auto& c : enumerate_chambers(n, kind)) enumerated.insert(c.signature.str());
      EXPECT_EQ(wsm::testing::monte_carlo_signatures(n, kind, 100000, 99 + n), enumerated) << n;
    }
  }
}

TEST(Enumerate, ThreadCountDoesNotChangeOutput) {
  const auto serial = enumerate_chambers(4, WallKind::fine);
  setenv("WSM_THREADS", "3", 1);
  const auto parallel = enumerate_chambers(4, WallKind::fine);
  unsetenv("WSM_THREADS");
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].signature, parallel[i].signature);
    EXPECT_EQ(serial[i].witness, parallel[i].witness);
  }
}

TEST(Enumerate, GenusDomain) {
  // Genus 0 adds sum x > 2; with n = 3 only chambers touching that half-space survive.
  const auto restricted = enumerate_chambers(3, WallKind::fine, 0);
  for (const auto& c : restricted) {
    Rational sum;
    for (const auto& x : c.witness) sum += x;
    EXPECT_GT(sum, Rational(2));
  }
  EXPECT_LT(restricted.size(), enumerate_chambers(3, WallKind::fine).size());
  // Some candidate walls miss the domain sum x > 2: a pair summing to 1 forces sum x <= 2.
  const auto walls = nonempty_walls(3, WallKind::fine, 0);
  EXPECT_EQ(walls.size(), 0u);
  EXPECT_EQ(nonempty_walls(3, WallKind::fine).size(), 4u);
  EXPECT_EQ(nonempty_walls(4, WallKind::fine, 0).size(), 6u);
}

TEST(FineInterior, Examples) {
  EXPECT_TRUE(is_fine_interior(W("1,1,1")));
  EXPECT_FALSE(is_fine_interior(W("1/2,1/2")));
  EXPECT_FALSE(is_fine_interior(W("1/3,1/3,1/3")));
}

TEST(SmallTail, Examples) {
  EXPECT_TRUE(is_small_tail(W("1,1,1/100"), "3"));
  EXPECT_FALSE(is_small_tail(W("1/2,1/3,1/4"), "3"));
  EXPECT_TRUE(is_small_tail(W("1/5,1/5"), "2"));
  EXPECT_THROW(is_small_tail(W("1/5,1/5"), "7"), Error);
}

TEST(SmallTail, AgreesWithSlidingTheWeight) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(1, 10);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rational> ws;
    for (int i = 0; i < 4; ++i) ws.push_back(Rational(num(rng)) / Rational(10));
    const WeightData w = WeightData::from_weights(ws);
    if (!is_fine_interior(w)) continue;
    // Compare the side of each wall through t at the start with its side
    // just before the weight of t reaches 0.
    bool crosses = false;
    for (Subset I : candidate_walls(4, WallKind::fine)) {
      if (!contains(I, 3)) continue;
      const Rational rest = w.sum(I & ~singleton(3));
      const bool start_above = w.sum(I) > Rational(1);
      const bool end_above = rest >= Rational(1);
      if (start_above != end_above) crosses = true;
    }
    EXPECT_EQ(is_small_tail(w, 3), !crosses) << w.str();
  }
}

TEST(Walls, ThroughAndBetween) {
  const auto on = walls_through(W("1/2,1/2,1/4"));
  ASSERT_EQ(on.size(), 1u);
  EXPECT_EQ(on[0], Subset{0b011});
  const auto crossed = walls_between(W("1,1,1"), W("2/5,2/5,2/5"));
  EXPECT_EQ(crossed.size(), 3u);
}
