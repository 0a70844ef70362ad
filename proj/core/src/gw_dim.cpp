#include "wsm/gw_dim.hpp"

#include <charconv>
#include <set>

#include "wsm/error.hpp"

namespace wsm {

std::int64_t vdim_moduli(int g, const WeightData& weights, const CurveClass& beta, const TargetProfile& profile) {
  if (beta.rank() != profile.rank()) throw Error("rank", "class rank differs from the profile rank");
  if (g < 0 || !is_admissible({g, weights, beta})) throw Error("inadmissible", "data is not admissible");
  return static_cast<std::int64_t>(1 - g) * (profile.dim_v - 3) - profile.canonical_pairing(beta) +
         static_cast<std::int64_t>(weights.size());
}

GateResult dimension_gate(int g, const WeightData& weights, const CurveClass& beta, const TargetProfile& profile,
                          const std::vector<Insertion>& insertions) {
  GateResult out;
  out.vdim = vdim_moduli(g, weights, beta, profile);
  std::set<std::string> seen;
  for (const Insertion& ins : insertions) {
    weights.index_of(ins.weight_label);
    if (!seen.insert(ins.weight_label).second) {
      throw Error("duplicate-label", "label " + ins.weight_label + " carries two insertions");
    }
    if (ins.codim < 0 || ins.descendant_power < 0) throw Error("bad-insertion", "negative degree");
    out.degree += ins.codim + ins.descendant_power;
  }
  out.deficit = out.degree - out.vdim;
  out.passes = out.deficit == 0;
  return out;
}

Insertion parse_insertion(const std::string& text) {
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 0) {
      throw Error("bad-insertion", "cannot read insertion '" + text + "'");
    }
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos || c1 == 0) throw Error("bad-insertion", "expected label:codim[:k], got '" + text + "'");
  Insertion ins;
  ins.weight_label = text.substr(0, c1);
  const std::string_view rest = std::string_view(text).substr(c1 + 1);
  const auto c2 = rest.find(':');
  ins.codim = number(rest.substr(0, c2));
  if (c2 != std::string_view::npos) ins.descendant_power = number(rest.substr(c2 + 1));
  return ins;
}

}  // namespace wsm
