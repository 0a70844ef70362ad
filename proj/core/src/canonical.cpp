#include <algorithm>
#include <map>
#include <tuple>

#include "wsm/error.hpp"
#include "wsm/graph.hpp"

namespace wsm {

namespace {

struct FlagKey {
  bool tail;
  Rational weight;
  std::string label;
  std::int64_t color;

  friend bool operator==(const FlagKey&, const FlagKey&) = default;
  friend auto operator<=>(const FlagKey& a, const FlagKey& b) {
    if (auto c = a.tail <=> b.tail; c != 0) return c;
    if (auto c = a.weight <=> b.weight; c != 0) return c;
    if (auto c = a.label.compare(b.label); c != 0) return c <=> 0;
    return a.color <=> b.color;
  }
};

using Key = std::vector<std::int64_t>;

template <class T>
std::vector<std::int64_t> ranks(const std::vector<T>& keys) {
  std::vector<T> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    out.push_back(static_cast<std::int64_t>(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin()));
  }
  return out;
}

class Canonizer {
 public:
  Canonizer(const WGraph& g, const std::vector<std::int64_t>* vcol, const std::vector<std::int64_t>* fcol) : g_(g) {
    const std::size_t nv = g.vertices.size(), nf = g.flags.size();
    if (vcol && vcol->size() != nv) throw Error("color-size", "vertex colour vector has the wrong length");
    if (fcol && fcol->size() != nf) throw Error("color-size", "flag colour vector has the wrong length");
    std::vector<FlagKey> fk;
    for (std::size_t f = 0; f < nf; ++f) {
      fk.push_back(FlagKey{g.is_tail(f), g.flags[f].weight, g.flags[f].label, fcol ? (*fcol)[f] : 0});
    }
    flag_rank_ = ranks(fk);
    at_.assign(nv, {});
    for (std::size_t f = 0; f < nf; ++f) at_[g.flags[f].vertex].push_back(f);
    std::vector<Key> vk;
    for (std::size_t v = 0; v < nv; ++v) {
      Key k{g.vertices[v].genus, vcol ? (*vcol)[v] : 0};
      for (auto c : g.vertices[v].cls.coords()) k.push_back(c);
      Key tails;
      for (std::size_t f : at_[v]) {
        if (g.is_tail(f)) tails.push_back(flag_rank_[f]);
      }
      std::sort(tails.begin(), tails.end());
      k.push_back(static_cast<std::int64_t>(tails.size()));
      k.insert(k.end(), tails.begin(), tails.end());
      vk.push_back(std::move(k));
    }
    vertex_rank_ = ranks(vk);
  }

  void run() {
    auto colors = refine(vertex_rank_);
    search(colors);
  }

  CanonicalForm result(const std::vector<std::int64_t>* vcol, const std::vector<std::int64_t>* fcol) const {
    CanonicalForm out;
    out.vertex_perm = best_order_;
    out.flag_perm = best_flags_;
    out.graph = relabel(g_, out.vertex_perm, out.flag_perm);
    if (vcol) {
      for (std::size_t v : out.vertex_perm) out.vertex_colors.push_back((*vcol)[v]);
    }
    if (fcol) {
      for (std::size_t f : out.flag_perm) out.flag_colors.push_back((*fcol)[f]);
    }
    return out;
  }

 private:
  // Colour refinement by neighbourhood multisets, canonical in the input colours.
  std::vector<std::int64_t> refine(std::vector<std::int64_t> colors) const {
    const std::size_t nv = colors.size();
    std::size_t classes = count(colors);
    while (true) {
      std::vector<Key> sig(nv);
      for (std::size_t v = 0; v < nv; ++v) {
        sig[v].push_back(colors[v]);
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> nb;
        for (std::size_t f : at_[v]) {
          if (g_.is_tail(f)) continue;
          const std::size_t p = g_.partner(f);
          nb.emplace_back(flag_rank_[f], flag_rank_[p], colors[g_.vertex_of(p)]);
        }
        std::sort(nb.begin(), nb.end());
        for (const auto& [a, b, c] : nb) {
          sig[v].push_back(a);
          sig[v].push_back(b);
          sig[v].push_back(c);
        }
      }
      auto next = ranks(sig);
      const std::size_t n = count(next);
      colors = std::move(next);
      if (n == classes) return colors;
      classes = n;
    }
  }

  static std::size_t count(const std::vector<std::int64_t>& c) {
    std::vector<std::int64_t> s = c;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }

  void search(const std::vector<std::int64_t>& colors) {
    const std::size_t nv = colors.size();
    // First non-singleton cell by colour value.
    std::map<std::int64_t, std::vector<std::size_t>> cells;
    for (std::size_t v = 0; v < nv; ++v) cells[colors[v]].push_back(v);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& [c, members] : cells) {
      if (members.size() > 1) {
        target = &members;
        break;
      }
    }
    if (!target) {
      leaf(colors);
      return;
    }
    for (std::size_t v : *target) {
      std::vector<std::int64_t> split(nv);
      for (std::size_t w = 0; w < nv; ++w) split[w] = 2 * colors[w] + ((colors[w] == colors[v] && w != v) ? 1 : 0);
      search(refine(split));
    }
  }

  void leaf(const std::vector<std::int64_t>& colors) {
    const std::size_t nv = colors.size();
    std::vector<std::size_t> order(nv), pos(nv);
    for (std::size_t v = 0; v < nv; ++v) order[static_cast<std::size_t>(colors[v])] = v;
    for (std::size_t i = 0; i < nv; ++i) pos[order[i]] = i;

    Key cert;
    cert.push_back(static_cast<std::int64_t>(nv));
    for (std::size_t v : order) cert.push_back(vertex_rank_[v]);

    using Rec = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::size_t, std::size_t>;
    std::vector<Rec> tails, edges;
    for (std::size_t f = 0; f < g_.flags.size(); ++f) {
      const auto pf = static_cast<std::int64_t>(pos[g_.vertex_of(f)]);
      if (g_.is_tail(f)) {
        tails.emplace_back(pf, flag_rank_[f], 0, 0, f, f);
        continue;
      }
      const std::size_t h = g_.partner(f);
      const auto ph = static_cast<std::int64_t>(pos[g_.vertex_of(h)]);
      const auto a = std::make_pair(pf, flag_rank_[f]);
      const auto b = std::make_pair(ph, flag_rank_[h]);
      if (a < b || (a == b && f < h)) edges.emplace_back(a.first, a.second, b.first, b.second, f, h);
    }
    std::sort(tails.begin(), tails.end());
    std::sort(edges.begin(), edges.end());
    cert.push_back(static_cast<std::int64_t>(tails.size()));
    for (const auto& t : tails) {
      cert.push_back(std::get<0>(t));
      cert.push_back(std::get<1>(t));
    }
    for (const auto& e : edges) {
      cert.push_back(std::get<0>(e));
      cert.push_back(std::get<1>(e));
      cert.push_back(std::get<2>(e));
      cert.push_back(std::get<3>(e));
    }
    if (have_best_ && !(cert < best_cert_)) return;
    have_best_ = true;
    best_cert_ = std::move(cert);
    best_order_ = order;
    best_flags_.clear();
    for (const auto& t : tails) best_flags_.push_back(std::get<4>(t));
    for (const auto& e : edges) {
      best_flags_.push_back(std::get<4>(e));
      best_flags_.push_back(std::get<5>(e));
    }
  }

  const WGraph& g_;
  std::vector<std::int64_t> flag_rank_;
  std::vector<std::int64_t> vertex_rank_;
  std::vector<std::vector<std::size_t>> at_;
  bool have_best_ = false;
  Key best_cert_;
  std::vector<std::size_t> best_order_;
  std::vector<std::size_t> best_flags_;
};

}  // namespace

CanonicalForm canonical_form(const WGraph& g, const std::vector<std::int64_t>* vertex_colors,
                             const std::vector<std::int64_t>* flag_colors) {
  Canonizer c(g, vertex_colors, flag_colors);
  c.run();
  return c.result(vertex_colors, flag_colors);
}

bool isomorphic(const WGraph& a, const WGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.flags.size() != b.flags.size() || !(a.profile == b.profile)) {
    return false;
  }
  return canonical_form(a).graph == canonical_form(b).graph;
}

std::string canonical_key(const WGraph& g) {
  const WGraph c = canonical_form(g).graph;
  std::string out = c.profile.str() + "|";
  for (const Vertex& v : c.vertices) out += std::to_string(v.genus) + v.cls.str() + ";";
  out += "|";
  for (const Flag& f : c.flags) {
    out += std::to_string(f.vertex) + "," + std::to_string(f.partner) + "," + f.weight.str() + "," + f.label + ";";
  }
  return out;
}

}  // namespace wsm
