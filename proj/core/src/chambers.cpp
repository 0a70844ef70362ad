#include "wsm/chambers.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "wsm/error.hpp"
#include "wsm/feasibility.hpp"

namespace wsm {

namespace {

Side compare_to_one(const Rational& s) {
  const auto c = s <=> Rational(1);
  if (c < 0) return Side::below;
  if (c > 0) return Side::above;
  return Side::on;
}

Rational point_sum(const std::vector<Rational>& x, Subset s) {
  Rational total;
  for (std::size_t i : subset_members(s)) total += x[i];
  return total;
}

struct Layout {
  std::size_t n;
  WallKind kind;
  std::vector<Subset> walls;
  std::vector<int> index;  // subset -> wall index or -1
  std::optional<int> genus;

  Layout(std::size_t n_, WallKind kind_, std::optional<int> genus_)
      : n(n_), kind(kind_), walls(candidate_walls(n_, kind_)), index(std::size_t{1} << n_, -1), genus(genus_) {
    for (std::size_t k = 0; k < walls.size(); ++k) index[walls[k]] = static_cast<int>(k);
  }

  LinearConstraint sum_constraint(Subset s, Relation rel, const Rational& rhs) const {
    LinearConstraint c;
    c.coeffs.assign(n, Rational(0));
    for (std::size_t i : subset_members(s)) c.coeffs[i] = Rational(1);
    c.rel = rel;
    c.rhs = rhs;
    return c;
  }

  std::vector<LinearConstraint> domain() const {
    std::vector<LinearConstraint> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(sum_constraint(singleton(i), Relation::greater, Rational(0)));
      out.push_back(sum_constraint(singleton(i), Relation::less_equal, Rational(1)));
    }
    if (genus && 2 - 2 * *genus > 0) {
      out.push_back(sum_constraint(full_subset(n), Relation::greater, Rational(2 - 2 * *genus)));
    }
    return out;
  }
};

struct State {
  std::size_t next = 0;
  std::vector<Side> sides;
  std::vector<bool> forced;
  std::vector<Rational> witness;
};

class Enumerator {
 public:
  explicit Enumerator(const Layout& layout) : layout_(layout) {}

  // Children of a state, in output order. A state with next == walls.size() is a leaf.
  std::vector<State> children(const State& s) const {
    std::vector<State> out;
    const std::size_t k = s.next;
    const Subset wall = layout_.walls[k];
    bool forced = false;
    for (std::size_t e : subset_members(wall)) {
      const int j = layout_.index[wall & ~singleton(e)];
      if (j >= 0 && s.sides[j] == Side::above) {
        forced = true;
        break;
      }
    }
    if (forced) {
      State c = s;
      c.sides.push_back(Side::above);
      c.forced.push_back(true);
      c.next = k + 1;
      out.push_back(std::move(c));
      return out;
    }
    const Side current = compare_to_one(point_sum(s.witness, wall));
    for (Side side : {Side::below, Side::above}) {
      State c = s;
      c.sides.push_back(side);
      c.forced.push_back(false);
      c.next = k + 1;
      if (current != side) {
        auto w = solve(c);
        if (!w) continue;
        c.witness = std::move(*w);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  void run(const State& s, std::vector<Chamber>& out) const {
    if (s.next == layout_.walls.size()) {
      out.push_back(Chamber{ChamberSignature{layout_.n, layout_.kind, s.sides}, s.witness});
      return;
    }
    for (const auto& c : children(s)) run(c, out);
  }

  std::optional<std::vector<Rational>> solve(const State& s) const {
    auto constraints = layout_.domain();
    const std::size_t m = s.sides.size();
    for (std::size_t j = 0; j < m; ++j) {
      const Subset wall = layout_.walls[j];
      if (s.sides[j] == Side::above) {
        if (!s.forced[j]) constraints.push_back(layout_.sum_constraint(wall, Relation::greater, Rational(1)));
        continue;
      }
      bool maximal = true;
      for (std::size_t e = 0; e < layout_.n && maximal; ++e) {
        if (contains(wall, e)) continue;
        const int up = layout_.index[wall | singleton(e)];
        if (up >= 0 && static_cast<std::size_t>(up) < m && s.sides[up] == Side::below) maximal = false;
      }
      if (maximal) constraints.push_back(layout_.sum_constraint(wall, Relation::less, Rational(1)));
    }
    return find_point(layout_.n, constraints);
  }

 private:
  const Layout& layout_;
};

}  // namespace

std::string_view to_string(WallKind kind) { return kind == WallKind::fine ? "fine" : "coarse"; }

WallKind parse_wall_kind(std::string_view text) {
  if (text == "fine") return WallKind::fine;
  if (text == "coarse") return WallKind::coarse;
  throw Error("bad-kind", "wall kind must be 'fine' or 'coarse'");
}

char side_char(Side s) {
  switch (s) {
    case Side::below: return '-';
    case Side::on: return '0';
    case Side::above: return '+';
  }
  return '?';
}

bool subset_lex_less(Subset a, Subset b) {
  const auto ma = subset_members(a);
  const auto mb = subset_members(b);
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

std::vector<Subset> candidate_walls(std::size_t n, WallKind kind) {
  if (n > kMaxLabels) throw Error("too-large", "too many labels");
  std::vector<Subset> out;
  const Subset full = full_subset(n);
  for (Subset s = 1; s != 0 && s <= full; ++s) {
    if (subset_size(s) >= min_wall_size(kind)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    if (subset_size(a) != subset_size(b)) return subset_size(a) < subset_size(b);
    return subset_lex_less(a, b);
  });
  return out;
}

Side ChamberSignature::side(Subset wall) const {
  const auto walls = candidate_walls(n, kind);
  const auto it = std::find(walls.begin(), walls.end(), wall);
  if (it == walls.end()) throw Error("unknown-wall", "not a candidate wall");
  return sides[static_cast<std::size_t>(it - walls.begin())];
}

bool ChamberSignature::has_on() const { return std::find(sides.begin(), sides.end(), Side::on) != sides.end(); }

ChamberSignature ChamberSignature::restrict_to(WallKind coarser) const {
  if (coarser == kind) return *this;
  if (kind == WallKind::coarse) throw Error("bad-kind", "cannot refine a coarse signature");
  ChamberSignature out{n, coarser, {}};
  const auto walls = candidate_walls(n, kind);
  for (std::size_t k = 0; k < walls.size(); ++k) {
    if (subset_size(walls[k]) >= min_wall_size(coarser)) out.sides.push_back(sides[k]);
  }
  return out;
}

std::string ChamberSignature::str() const {
  std::string s;
  for (Side x : sides) s += side_char(x);
  return s;
}

ChamberSignature signature_of(const std::vector<Rational>& point, WallKind kind) {
  for (const auto& w : point) {
    if (w.sign() <= 0) throw Error("zero-weight", "chambers are defined for positive weights only");
  }
  ChamberSignature sig{point.size(), kind, {}};
  for (Subset wall : candidate_walls(point.size(), kind)) sig.sides.push_back(compare_to_one(point_sum(point, wall)));
  return sig;
}

ChamberSignature signature_of(const WeightData& weights, WallKind kind) { return signature_of(weights.weights(), kind); }

bool same_chamber(const WeightData& a, const WeightData& b, WallKind kind) {
  if (a.size() != b.size()) throw Error("label-mismatch", "weight data on different label sets");
  const auto sa = signature_of(a, kind);
  const auto sb = signature_of(b, kind);
  if (sa.has_on() || sb.has_on()) throw Error("on-wall", "a point lies on a wall");
  // Chambers are convex (open half-spaces cut with the box), so agreeing
  // signs already put the whole segment inside one chamber.
  return sa == sb;
}

std::size_t max_enumeration_size(WallKind) { return 6; }

unsigned worker_threads() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WSM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<Chamber> enumerate_chambers(std::size_t n, WallKind kind, std::optional<int> genus) {
  if (n < 1) throw Error("too-small", "need at least one label");
  if (n > max_enumeration_size(kind)) {
    throw Error("too-large", "chamber enumeration supports n <= " + std::to_string(max_enumeration_size(kind)));
  }
  if (genus && *genus < 0) throw Error("bad-genus", "genus must be non-negative");
  const Layout layout(n, kind, genus);
  const Enumerator en(layout);

  State root;
  auto start = find_point(n, layout.domain());
  if (!start) return {};
  root.witness = std::move(*start);

  const unsigned threads = worker_threads();
  std::vector<Chamber> out;
  if (threads <= 1 || layout.walls.empty()) {
    en.run(root, out);
    return out;
  }
  // Breadth-first until there is enough independent work, then run the
  // subtrees concurrently and concatenate in frontier order.
  std::vector<State> frontier{root};
  while (frontier.size() < 8 * threads && frontier.front().next < layout.walls.size()) {
    std::vector<State> next;
    for (const auto& s : frontier) {
      for (auto& c : en.children(s)) next.push_back(std::move(c));
    }
    frontier = std::move(next);
    if (frontier.empty()) return {};
  }
  std::vector<std::vector<Chamber>> parts(frontier.size());
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) en.run(frontier[i], parts[i]);
    });
  }
  for (auto& t : pool) t.join();
  for (auto& p : parts) {
    for (auto& c : p) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Subset> nonempty_walls(std::size_t n, WallKind kind, std::optional<int> genus) {
  const Layout layout(n, kind, genus);
  std::vector<Subset> out;
  for (Subset wall : layout.walls) {
    auto constraints = layout.domain();
    constraints.push_back(layout.sum_constraint(wall, Relation::equal, Rational(1)));
    if (find_point(n, constraints)) out.push_back(wall);
  }
  return out;
}

bool is_fine_interior(const WeightData& weights) { return !signature_of(weights, WallKind::fine).has_on(); }

bool is_small_tail(const WeightData& weights, std::string_view t) { return is_small_tail(weights, weights.index_of(t)); }

bool is_small_tail(const WeightData& weights, std::size_t t) {
  if (t >= weights.size()) throw Error("unknown-label", "tail index out of range");
  if (!is_fine_interior(weights)) return false;
  // Scaling w_t down to zero crosses the wall of I exactly when
  // 1 - w_t < sum_{I - t} < 1.
  for (Subset wall : candidate_walls(weights.size(), WallKind::fine)) {
    if (!contains(wall, t)) continue;
    if (weights.sum(wall) < Rational(1)) continue;
    if (weights.sum(wall & ~singleton(t)) >= Rational(1)) continue;
    return false;
  }
  return true;
}

std::vector<Subset> walls_through(const WeightData& weights, WallKind kind) {
  std::vector<Subset> out;
  for (Subset wall : candidate_walls(weights.size(), kind)) {
    if (weights.sum(wall) == Rational(1)) out.push_back(wall);
  }
  return out;
}

std::vector<Subset> walls_between(const WeightData& a, const WeightData& b, WallKind kind) {
  if (a.size() != b.size()) throw Error("label-mismatch", "weight data on different label sets");
  std::vector<Subset> out;
  for (Subset wall : candidate_walls(a.size(), kind)) {
    if (compare_to_one(a.sum(wall)) != compare_to_one(b.sum(wall))) out.push_back(wall);
  }
  return out;
}

}  // namespace wsm
