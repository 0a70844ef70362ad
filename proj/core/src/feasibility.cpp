#include "wsm/feasibility.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <bitset>
#include <limits>
#include <numeric>

#include "wsm/error.hpp"

namespace wsm {

namespace {

using BigInt = Rational::Integer;

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t abs_of(std::int64_t a) { return a < 0 ? -a : a; }

inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt abs_of(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

template <class Int>
Int to_int(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    if (v > BigInt(std::numeric_limits<std::int64_t>::max() / 4) ||
        v < BigInt(std::numeric_limits<std::int64_t>::min() / 4)) {
      throw Overflow{};
    }
    return static_cast<std::int64_t>(v);
  }
}

template <class Int>
Rational to_rational(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return Rational(v, BigInt(1));
  } else {
    return Rational(v);
  }
}

// a . x <= b over integers. The last coordinate is the slack t.
template <class Int, class History>
struct Row {
  std::vector<Int> a;
  Int b;
  History history;
};

inline std::size_t count_bits(const boost::dynamic_bitset<>& h) { return h.count(); }
template <std::size_t N>
std::size_t count_bits(const std::bitset<N>& h) {
  return h.count();
}
inline void init_history(boost::dynamic_bitset<>& h, std::size_t size, std::size_t bit) {
  h.resize(size);
  h.set(bit);
}
template <std::size_t N>
void init_history(std::bitset<N>& h, std::size_t, std::size_t bit) {
  h.set(bit);
}

template <class Int, class H>
void normalize(Row<Int, H>& r) {
  Int g = abs_of(r.b);
  for (const auto& c : r.a) g = gcd_of(g, abs_of(c));
  if (g > Int(1)) {
    for (auto& c : r.a) c /= g;
    r.b /= g;
  }
}

template <class Int, class H>
bool is_constant(const Row<Int, H>& r) {
  return std::all_of(r.a.begin(), r.a.end(), [](const Int& c) { return c == Int(0); });
}

// Keep only the tightest row per coefficient direction.
template <class Int, class H>
void dedup(std::vector<Row<Int, H>>& rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  auto last = std::unique(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.a == y.a; });
  rows.erase(last, rows.end());
}

template <class Int, class H>
std::optional<std::vector<Rational>> solve(std::size_t dim, std::span<const LinearConstraint> constraints) {
  const std::size_t width = dim + 1;  // x_0..x_{dim-1}, t
  std::vector<Row<Int, H>> rows;
  auto push = [&](std::vector<BigInt> a, BigInt b) {
    Row<Int, H> r;
    r.a.reserve(width);
    for (const auto& c : a) r.a.push_back(to_int<Int>(c));
    r.b = to_int<Int>(b);
    rows.push_back(std::move(r));
  };
  for (const auto& c : constraints) {
    if (c.coeffs.size() != dim) throw Error("dimension", "constraint has the wrong number of coefficients");
    BigInt scale = c.rhs.denominator();
    for (const auto& q : c.coeffs) scale = boost::multiprecision::lcm(scale, q.denominator());
    std::vector<BigInt> a;
    for (const auto& q : c.coeffs) a.push_back(q.numerator() * (scale / q.denominator()));
    BigInt b = c.rhs.numerator() * (scale / c.rhs.denominator());
    auto negated = [](std::vector<BigInt> v) {
      for (auto& x : v) x = -x;
      return v;
    };
    switch (c.rel) {
      case Relation::less: {
        auto v = a;
        v.push_back(1);
        push(v, b);
        break;
      }
      case Relation::less_equal: {
        auto v = a;
        v.push_back(0);
        push(v, b);
        break;
      }
      case Relation::equal: {
        auto v = a;
        v.push_back(0);
        push(v, b);
        auto w = negated(a);
        w.push_back(0);
        push(w, -b);
        break;
      }
      case Relation::greater_equal: {
        auto w = negated(a);
        w.push_back(0);
        push(w, -b);
        break;
      }
      case Relation::greater: {
        auto w = negated(a);
        w.push_back(1);
        push(w, -b);
        break;
      }
    }
  }
  // 0 < t <= 1
  {
    std::vector<BigInt> up(width, 0), down(width, 0);
    up[dim] = 1;
    down[dim] = -1;
    push(up, 1);
    push(down, 0);
  }
  const std::size_t original = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    init_history(rows[i].history, original, i);
    normalize(rows[i]);
  }
  dedup(rows);

  // Rows bounding the variable eliminated at each stage.
  std::vector<std::vector<Row<Int, H>>> stages;
  for (std::size_t var = 0; var < dim; ++var) {
    std::vector<Row<Int, H>> pos, neg, rest;
    for (auto& r : rows) {
      if (r.a[var] > Int(0)) {
        pos.push_back(std::move(r));
      } else if (r.a[var] < Int(0)) {
        neg.push_back(std::move(r));
      } else {
        rest.push_back(std::move(r));
      }
    }
    std::vector<Row<Int, H>> stage;
    stage.reserve(pos.size() + neg.size());
    for (const auto& r : pos) stage.push_back(r);
    for (const auto& r : neg) stage.push_back(r);
    stages.push_back(std::move(stage));
    const std::size_t bound = var + 2;  // Chernikov: at most (eliminated + 1) originals
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        auto hist = p.history | n.history;
        if (count_bits(hist) > bound) continue;
        const Int cp = p.a[var];
        const Int cn = -n.a[var];
        Row<Int, H> r;
        r.a.resize(width);
        for (std::size_t k = 0; k < width; ++k) r.a[k] = add(mul(cn, p.a[k]), mul(cp, n.a[k]));
        r.a[var] = Int(0);
        r.b = add(mul(cn, p.b), mul(cp, n.b));
        r.history = std::move(hist);
        normalize(r);
        if (is_constant(r)) {
          if (r.b < Int(0)) return std::nullopt;
          continue;
        }
        rest.push_back(std::move(r));
      }
    }
    rows = std::move(rest);
    dedup(rows);
  }

  // Only t remains. Take the largest admissible t.
  Rational lower(0), upper(1);
  for (const auto& r : rows) {
    const Int& c = r.a[dim];
    if (c == Int(0)) {
      if (r.b < Int(0)) return std::nullopt;
      continue;
    }
    const Rational bound = to_rational(r.b) / to_rational(c);
    if (c > Int(0)) {
      upper = min(upper, bound);
    } else {
      lower = max(lower, bound);
    }
  }
  if (upper.sign() <= 0 || lower > upper) return std::nullopt;

  std::vector<Rational> x(width);
  x[dim] = upper;
  for (std::size_t s = dim; s-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& row : stages[s]) {
      Rational rest = to_rational(row.b);
      for (std::size_t j = s + 1; j < width; ++j) {
        if (row.a[j] != Int(0)) rest -= to_rational(row.a[j]) * x[j];
      }
      const Rational bound = rest / to_rational(row.a[s]);
      if (row.a[s] > Int(0)) {
        hi = hi ? min(*hi, bound) : bound;
      } else {
        lo = lo ? max(*lo, bound) : bound;
      }
    }
    if (lo && hi) {
      x[s] = (*lo + *hi) / Rational(2);
    } else if (lo) {
      x[s] = *lo + Rational(1);
    } else if (hi) {
      x[s] = *hi - Rational(1);
    } else {
      x[s] = Rational(0);
    }
  }
  x.pop_back();
  return x;
}

}  // namespace

bool satisfies(std::span<const Rational> point, const LinearConstraint& c) {
  Rational lhs;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (!c.coeffs[i].is_zero()) lhs += c.coeffs[i] * point[i];
  }
  switch (c.rel) {
    case Relation::less: return lhs < c.rhs;
    case Relation::less_equal: return lhs <= c.rhs;
    case Relation::equal: return lhs == c.rhs;
    case Relation::greater_equal: return lhs >= c.rhs;
    case Relation::greater: return lhs > c.rhs;
  }
  return false;
}

std::optional<std::vector<Rational>> find_point(std::size_t dim, std::span<const LinearConstraint> constraints) {
  // Every equality contributes two rows, plus the two slack bounds.
  std::size_t rows = 2;
  for (const auto& c : constraints) rows += c.rel == Relation::equal ? 2 : 1;
  if (rows <= 128) {
    try {
      return solve<std::int64_t, std::bitset<128>>(dim, constraints);
    } catch (const Overflow&) {
      return solve<BigInt, std::bitset<128>>(dim, constraints);
    }
  }
  try {
    return solve<std::int64_t, boost::dynamic_bitset<>>(dim, constraints);
  } catch (const Overflow&) {
    return solve<BigInt, boost::dynamic_bitset<>>(dim, constraints);
  }
}

}  // namespace wsm
