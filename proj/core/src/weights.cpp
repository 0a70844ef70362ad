#include "wsm/weights.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "wsm/error.hpp"

namespace wsm {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  const Rational q = Rational::parse(trim(s));
  if (!q.is_integer()) throw Error("bad-integer", "expected an integer, got '" + std::string(s) + "'");
  return static_cast<std::int64_t>(q.numerator());
}

}  // namespace

std::vector<std::size_t> subset_members(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1U) out.push_back(i);
  }
  return out;
}

WeightData::WeightData(std::vector<std::string> labels, std::vector<Rational> weights, ZeroWeights zeros)
    : labels_(std::move(labels)), weights_(std::move(weights)), zeros_(zeros) {
  if (labels_.size() != weights_.size()) {
    throw Error("bad-weights", "label and weight counts differ");
  }
  if (labels_.size() > kMaxLabels) {
    throw Error("too-large", "at most " + std::to_string(kMaxLabels) + " labels are supported");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw Error("bad-weights", "empty label");
    if (!seen.insert(labels_[i]).second) throw Error("bad-weights", "duplicate label '" + labels_[i] + "'");
    const Rational& w = weights_[i];
    const bool low_ok = zeros_ == ZeroWeights::allowed ? w.sign() >= 0 : w.sign() > 0;
    if (!low_ok || w > Rational(1)) {
      throw Error("weight-range", "weight of '" + labels_[i] + "' is " + w.str() +
                                      (zeros_ == ZeroWeights::allowed ? ", outside [0,1]" : ", outside (0,1]"));
    }
  }
}

WeightData WeightData::from_weights(std::vector<Rational> weights, ZeroWeights zeros) {
  std::vector<std::string> labels;
  labels.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) labels.push_back(std::to_string(i + 1));
  return WeightData(std::move(labels), std::move(weights), zeros);
}

WeightData WeightData::parse(std::string_view text, ZeroWeights zeros) {
  text = trim(text);
  if (text.empty()) return WeightData({}, {}, zeros);
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  std::size_t position = 0;
  for (std::string_view item : split(text, ',')) {
    ++position;
    item = trim(item);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      labels.push_back(std::to_string(position));
      weights.push_back(Rational::parse(item));
    } else {
      labels.emplace_back(trim(item.substr(0, eq)));
      weights.push_back(Rational::parse(trim(item.substr(eq + 1))));
    }
  }
  return WeightData(std::move(labels), std::move(weights), zeros);
}

bool WeightData::has_zero() const {
  return std::any_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w.is_zero(); });
}

std::size_t WeightData::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw Error("unknown-label", "unknown label '" + std::string(label) + "'");
}

Subset WeightData::subset_of(std::span<const std::string> labels) const {
  Subset s = 0;
  for (const auto& l : labels) s |= singleton(index_of(l));
  return s;
}

std::vector<std::string> WeightData::labels_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i : subset_members(s)) out.push_back(labels_.at(i));
  return out;
}

Rational WeightData::sum(Subset s) const {
  Rational total;
  for (std::size_t i : subset_members(s)) total += weights_.at(i);
  return total;
}

bool WeightData::dominates(const WeightData& other) const {
  if (!same_labels(other)) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (weights_[i] < other.weights_[i]) return false;
  }
  return true;
}

std::string WeightData::str() const {
  bool default_labels = true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels_[i] != std::to_string(i + 1)) default_labels = false;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ',';
    if (!default_labels) os << labels_[i] << '=';
    os << weights_[i];
  }
  return os.str();
}

CurveClass::CurveClass(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  for (auto c : coords_) {
    if (c < 0) throw Error("bad-class", "curve class coordinates must be non-negative");
  }
}

CurveClass CurveClass::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  if (trim(text).empty()) return CurveClass();
  std::vector<std::int64_t> coords;
  for (auto item : split(text, ',')) coords.push_back(parse_int(item));
  return CurveClass(std::move(coords));
}

bool CurveClass::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t CurveClass::degree() const { return std::accumulate(coords_.begin(), coords_.end(), std::int64_t{0}); }

bool CurveClass::dominated_by(const CurveClass& other) const {
  if (rank() != other.rank()) throw Error("rank-mismatch", "curve classes of different rank");
  for (std::size_t i = 0; i < rank(); ++i) {
    if (coords_[i] > other.coords_[i]) return false;
  }
  return true;
}

CurveClass& CurveClass::operator+=(const CurveClass& rhs) {
  if (rank() != rhs.rank()) throw Error("rank-mismatch", "curve classes of different rank");
  for (std::size_t i = 0; i < rank(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

CurveClass operator-(const CurveClass& lhs, const CurveClass& rhs) {
  if (!rhs.dominated_by(lhs)) throw Error("bad-class", "curve class difference is not effective");
  CurveClass out = lhs;
  for (std::size_t i = 0; i < lhs.rank(); ++i) out.coords_[i] -= rhs.coords_[i];
  return out;
}

std::string CurveClass::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

std::int64_t TargetProfile::canonical_pairing(const CurveClass& beta) const {
  if (beta.rank() != rank()) throw Error("rank-mismatch", "curve class rank does not match the target profile");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rank(); ++i) total += kappa[i] * beta[i];
  return total;
}

TargetProfile TargetProfile::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  TargetProfile p;
  p.dim_v = static_cast<int>(parse_int(text.substr(0, colon)));
  if (p.dim_v < 0) throw Error("bad-profile", "dim V must be non-negative");
  if (colon != std::string_view::npos && !trim(text.substr(colon + 1)).empty()) {
    for (auto item : split(text.substr(colon + 1), ',')) p.kappa.push_back(parse_int(item));
  }
  return p;
}

std::string TargetProfile::str() const {
  std::string s = std::to_string(dim_v) + ":";
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(kappa[i]);
  }
  return s;
}

bool is_admissible(const AdmissibleData& d) {
  if (!d.beta.is_zero()) return true;
  return Rational(2 * d.genus - 2) + d.weights.total() > Rational(0);
}

bool coincidence_ok(const WeightData& weights, std::span<const std::string> group) {
  return coincidence_ok(weights, weights.subset_of(group));
}

bool coincidence_ok(const WeightData& weights, Subset group) { return weights.sum(group) <= Rational(1); }

bool vertex_ample(int genus, std::span<const Rational> flag_weights, const CurveClass& beta) {
  if (!beta.is_zero()) return true;
  Rational total(2 * genus - 2);
  for (const auto& w : flag_weights) total += w;
  return total.sign() > 0;
}

}  // namespace wsm
