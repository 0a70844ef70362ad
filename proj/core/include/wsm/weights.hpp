#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsm/rational.hpp"

namespace wsm {

/// A subset of label positions, as a bitmask. Bit i is label i of a WeightData.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxLabels = 24;

inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline bool contains(Subset s, std::size_t i) { return (s >> i) & 1U; }
inline Subset singleton(std::size_t i) { return Subset{1} << i; }
inline Subset full_subset(std::size_t n) { return n == 0 ? 0 : (n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1); }
std::vector<std::size_t> subset_members(Subset s);

enum class ZeroWeights { forbidden, allowed };

/// Weight data on an ordered finite label set. Weights lie in (0,1], or in
/// [0,1] when zeros are explicitly allowed.
class WeightData {
 public:
  WeightData() = default;
  WeightData(std::vector<std::string> labels, std::vector<Rational> weights,
             ZeroWeights zeros = ZeroWeights::forbidden);

  /// Labels "1", "2", ... in order.
  static WeightData from_weights(std::vector<Rational> weights, ZeroWeights zeros = ZeroWeights::forbidden);

  /// "1,1/2,1/3" (labels 1..n) or "a=1,b=1/2".
  static WeightData parse(std::string_view text, ZeroWeights zeros = ZeroWeights::forbidden);

  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  const Rational& weight(std::string_view label) const { return weights_[index_of(label)]; }
  bool allows_zero() const { return zeros_ == ZeroWeights::allowed; }
  bool has_zero() const;

  /// Throws Error("unknown-label").
  std::size_t index_of(std::string_view label) const;
  Subset subset_of(std::span<const std::string> labels) const;
  std::vector<std::string> labels_of(Subset s) const;

  Rational sum(Subset s) const;
  Rational total() const { return sum(full_subset(size())); }

  /// Same labels in the same order and every weight at least the other's.
  bool dominates(const WeightData& other) const;
  bool same_labels(const WeightData& other) const { return labels_ == other.labels_; }

  /// "a=1,b=1/2" form, or the bare list when labels are 1..n.
  std::string str() const;

  friend bool operator==(const WeightData&, const WeightData&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> weights_;
  ZeroWeights zeros_ = ZeroWeights::forbidden;
};

/// Element of the semigroup N^k of effective curve classes.
class CurveClass {
 public:
  CurveClass() = default;
  explicit CurveClass(std::size_t rank) : coords_(rank, 0) {}
  explicit CurveClass(std::vector<std::int64_t> coords);

  /// "2" or "1,0,3"; the empty string is the rank-0 class.
  static CurveClass parse(std::string_view text);

  std::size_t rank() const { return coords_.size(); }
  bool is_zero() const;
  std::int64_t operator[](std::size_t i) const { return coords_.at(i); }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::int64_t degree() const;

  /// Componentwise <=.
  bool dominated_by(const CurveClass& other) const;

  CurveClass& operator+=(const CurveClass& rhs);
  friend CurveClass operator+(CurveClass lhs, const CurveClass& rhs) { return lhs += rhs; }
  /// Throws if the difference leaves N^k.
  friend CurveClass operator-(const CurveClass& lhs, const CurveClass& rhs);

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;

  /// "(1,0)"
  std::string str() const;

 private:
  std::vector<std::int64_t> coords_;
};

/// dim V and the vector kappa with K_V . beta = kappa . coords(beta).
struct TargetProfile {
  int dim_v = 0;
  std::vector<std::int64_t> kappa;

  std::size_t rank() const { return kappa.size(); }
  std::int64_t canonical_pairing(const CurveClass& beta) const;

  static TargetProfile point() { return {}; }
  static TargetProfile projective_space(int n) { return {n, {-(n + 1)}}; }
  /// "3:-4" or "3:-4,0"; "0" or "0:" is a point.
  static TargetProfile parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const TargetProfile&, const TargetProfile&) = default;
  friend auto operator<=>(const TargetProfile&, const TargetProfile&) = default;
};

struct AdmissibleData {
  int genus = 0;
  WeightData weights;
  CurveClass beta;
};

/// beta != 0 or 2g - 2 + sum of weights > 0.
bool is_admissible(const AdmissibleData& d);

/// Whether the sections labelled by `group` may coincide: sum of weights <= 1.
bool coincidence_ok(const WeightData& weights, std::span<const std::string> group);
bool coincidence_ok(const WeightData& weights, Subset group);

/// Ampleness at a single vertex: beta != 0 or 2g - 2 + sum(flag weights) > 0.
/// Edge flags are passed with weight one.
bool vertex_ample(int genus, std::span<const Rational> flag_weights, const CurveClass& beta);

}  // namespace wsm
