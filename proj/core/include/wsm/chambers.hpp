#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsm/rational.hpp"
#include "wsm/weights.hpp"

namespace wsm {

/// Fine walls are all I with |I| >= 2, coarse walls those with |I| >= 3.
enum class WallKind { fine, coarse };

enum class Side : std::int8_t { below = -1, on = 0, above = 1 };

std::string_view to_string(WallKind kind);
WallKind parse_wall_kind(std::string_view text);
char side_char(Side s);

inline int min_wall_size(WallKind kind) { return kind == WallKind::fine ? 2 : 3; }

/// Candidate walls on n labels, ordered by size then lexicographically.
std::vector<Subset> candidate_walls(std::size_t n, WallKind kind);

/// Lexicographic comparison of subsets as sorted member lists.
bool subset_lex_less(Subset a, Subset b);

/// The side of every candidate wall, in candidate_walls order.
struct ChamberSignature {
  std::size_t n = 0;
  WallKind kind = WallKind::fine;
  std::vector<Side> sides;

  Side side(Subset wall) const;
  bool has_on() const;
  /// Restriction of a fine signature to the coarse walls.
  ChamberSignature restrict_to(WallKind coarser) const;
  /// One character per wall: '-', '0', '+'.
  std::string str() const;

  friend bool operator==(const ChamberSignature&, const ChamberSignature&) = default;
  friend auto operator<=>(const ChamberSignature&, const ChamberSignature&) = default;
};

struct Chamber {
  ChamberSignature signature;
  std::vector<Rational> witness;
};

/// Signs of sum_I w - 1 for every candidate wall. Throws "zero-weight" on a zero weight.
ChamberSignature signature_of(const WeightData& weights, WallKind kind = WallKind::fine);
ChamberSignature signature_of(const std::vector<Rational>& point, WallKind kind = WallKind::fine);

/// Throws "on-wall" if either point lies on a wall of the given kind.
bool same_chamber(const WeightData& a, const WeightData& b, WallKind kind);

/// Largest n accepted by enumerate_chambers for each kind.
std::size_t max_enumeration_size(WallKind kind);

/// Every strict sign pattern realized in (0,1]^n, with an exact witness each,
/// in lexicographic order of signatures (below before above). With a genus,
/// the domain is further cut by sum x > 2 - 2g.
///
/// Work is split over WSM_THREADS threads when that variable is set; the
/// output does not depend on it.
std::vector<Chamber> enumerate_chambers(std::size_t n, WallKind kind, std::optional<int> genus = std::nullopt);

/// Candidate walls that actually meet the domain.
std::vector<Subset> nonempty_walls(std::size_t n, WallKind kind, std::optional<int> genus = std::nullopt);

/// No subset with at least two labels sums to exactly one.
bool is_fine_interior(const WeightData& weights);

/// Sliding the weight of `t` to zero crosses no fine wall.
bool is_small_tail(const WeightData& weights, std::string_view t);
bool is_small_tail(const WeightData& weights, std::size_t t);

/// Walls containing the given point.
std::vector<Subset> walls_through(const WeightData& weights, WallKind kind = WallKind::fine);

/// Walls strictly separating two points.
std::vector<Subset> walls_between(const WeightData& a, const WeightData& b, WallKind kind = WallKind::fine);

/// Number of worker threads from WSM_THREADS (at least 1).
unsigned worker_threads();

}  // namespace wsm
