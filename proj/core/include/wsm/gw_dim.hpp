#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsm/weights.hpp"

namespace wsm {

struct Insertion {
  int codim = 0;
  int descendant_power = 0;
  std::string weight_label;
};

/// (1 - g)(dim V - 3) - K_V . beta + |S|. Throws "inadmissible".
std::int64_t vdim_moduli(int g, const WeightData& weights, const CurveClass& beta, const TargetProfile& profile);

struct GateResult {
  bool passes = false;
  std::int64_t vdim = 0;
  std::int64_t degree = 0;
  /// degree - vdim.
  std::int64_t deficit = 0;
};

/// Compares the total insertion degree sum(codim + k) with vdim.
GateResult dimension_gate(int g, const WeightData& weights, const CurveClass& beta, const TargetProfile& profile,
                          const std::vector<Insertion>& insertions);

/// "label:codim" or "label:codim:k".
Insertion parse_insertion(const std::string& text);

}  // namespace wsm
