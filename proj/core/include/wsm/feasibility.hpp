#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wsm/rational.hpp"

namespace wsm {

enum class Relation { less, less_equal, equal, greater_equal, greater };

/// coeffs . x  rel  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::less_equal;
  Rational rhs;
};

/// Exact feasibility of a system of linear constraints in `dim` unknowns by
/// Fourier-Motzkin elimination. Returns a rational point satisfying every
/// constraint, or nullopt when the system is infeasible.
///
/// Strict rows are handled with a shared slack t > 0 (a.x + t <= b), so the
/// eliminated system is non-strict and Chernikov's history bound applies.
std::optional<std::vector<Rational>> find_point(std::size_t dim, std::span<const LinearConstraint> constraints);

bool satisfies(std::span<const Rational> point, const LinearConstraint& c);

}  // namespace wsm
