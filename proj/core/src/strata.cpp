#include "wsm/strata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "wsm/category.hpp"
#include "wsm/chambers.hpp"
#include "wsm/error.hpp"
#include "wsm/reduction.hpp"

namespace wsm {

namespace {

// All ways to write total as an ordered sum of `parts` non-negative integers.
void compositions(std::int64_t total, std::size_t parts, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> c(parts, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == parts) {
      c[i] = left;
      fn(c);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (parts == 0) {
    if (total == 0) fn(c);
    return;
  }
  rec(0, total);
}

bool connected(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t comps = k;
  for (const auto& [a, b] : edges) {
    const std::size_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps == 1;
}

struct Shape {
  std::size_t k;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> genus;
  std::vector<CurveClass> classes;
};

std::vector<Shape> shapes(const StrataQuery& q) {
  std::vector<Shape> out;
  const std::size_t rank = q.profile.rank();
  for (std::size_t k = 1; k <= static_cast<std::size_t>(q.max_edges) + 1; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) pairs.emplace_back(i, j);
    }
    for (std::int64_t e = static_cast<std::int64_t>(k) - 1; e <= q.max_edges; ++e) {
      const std::int64_t genus_left = q.genus_total - (e - static_cast<std::int64_t>(k) + 1);
      if (genus_left < 0) continue;
      compositions(e, pairs.size(), [&](const std::vector<std::int64_t>& mult) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          for (std::int64_t m = 0; m < mult[p]; ++m) edges.push_back(pairs[p]);
        }
        if (!connected(k, edges)) return;
        compositions(genus_left, k, [&](const std::vector<std::int64_t>& genus) {
          // Classes: one composition per coordinate.
          std::vector<std::vector<std::int64_t>> coords(k, std::vector<std::int64_t>(rank, 0));
          std::function<void(std::size_t)> per_coord = [&](std::size_t r) {
            if (r == rank) {
              Shape s{k, edges, {}, {}};
              for (std::size_t v = 0; v < k; ++v) {
                s.genus.push_back(static_cast<int>(genus[v]));
                s.classes.emplace_back(coords[v]);
              }
              out.push_back(std::move(s));
              return;
            }
            compositions(q.beta_total[r], k, [&](const std::vector<std::int64_t>& split) {
              for (std::size_t v = 0; v < k; ++v) coords[v][r] = split[v];
              per_coord(r + 1);
            });
          };
          per_coord(0);
        });
      });
    }
  }
  return out;
}

void check_query(const StrataQuery& q) {
  if (q.max_edges < 0) throw Error("bad-query", "max_edges must be non-negative");
  if (q.genus_total < 0) throw Error("bad-query", "genus must be non-negative");
  if (q.beta_total.rank() != q.profile.rank()) throw Error("rank", "class rank differs from the profile rank");
  if (!is_admissible({q.genus_total, q.weights, q.beta_total})) throw Error("inadmissible", "query data is not admissible");
}

}  // namespace

std::vector<WGraph> enumerate_strata(const StrataQuery& q) {
  check_query(q);
  const std::vector<Shape> all_shapes = shapes(q);
  const std::size_t n = q.weights.size();
  std::map<std::string, WGraph> found;
  std::mutex mu;

  auto work = [&](std::size_t begin, std::size_t end) {
    std::map<std::string, WGraph> local;
    for (std::size_t si = begin; si < end; ++si) {
      const Shape& s = all_shapes[si];
      std::vector<std::size_t> where(n, 0);
      while (true) {
        WGraph g(q.profile);
        for (std::size_t v = 0; v < s.k; ++v) g.add_vertex(s.genus[v], s.classes[v]);
        for (std::size_t i = 0; i < n; ++i) g.add_tail(where[i], q.weights.weight(i), q.weights.label(i));
        for (const auto& [a, b] : s.edges) g.add_edge(a, b);
        if (is_stable(g)) {
          std::string key = canonical_key(g);
          if (!local.count(key)) local.emplace(std::move(key), canonical_form(g).graph);
        }
        std::size_t i = 0;
        while (i < n && where[i] + 1 == s.k) where[i++] = 0;
        if (i == n) break;
        ++where[i];
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    found.merge(local);
  };

  const std::size_t threads = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(all_shapes.size(), 1));
  if (threads <= 1) {
    work(0, all_shapes.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (all_shapes.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = std::min(all_shapes.size(), t * chunk);
      const std::size_t e = std::min(all_shapes.size(), b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::pair<std::string, WGraph>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second.n_edges() < b.second.n_edges(); });
  std::vector<WGraph> out;
  for (auto& [key, g] : sorted) out.push_back(std::move(g));
  return out;
}

StratumPoset contraction_poset(const std::vector<WGraph>& strata) {
  StratumPoset out{strata, {}};
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < strata.size(); ++i) index.emplace(canonical_key(strata[i]), i);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    std::vector<bool> seen(strata.size(), false);
    for (const auto& [f, p] : strata[i].edges()) {
      const Contraction c = contract_edge(strata[i], f);
      const auto it = index.find(canonical_key(c.target));
      if (it == index.end() || seen[it->second]) continue;
      seen[it->second] = true;
      out.covers.push_back({i, it->second, f});
    }
  }
  return out;
}

std::string poset_dot(const StratumPoset& poset) {
  std::string out = "digraph strata {\n";
  for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
    const GraphStats st = stats(poset.nodes[i]);
    out += "  s" + std::to_string(i) + " [label=\"" + std::to_string(st.n_edges) + "/" + std::to_string(st.vdim) + "\"];\n";
  }
  for (const Cover& c : poset.covers) {
    out += "  s" + std::to_string(c.from) + " -> s" + std::to_string(c.to) + ";\n";
  }
  return out + "}\n";
}

ChamberDiff chamber_diff(const std::vector<WGraph>& strata, const WeightData& b) {
  ChamberDiff out;
  out.strata = strata;
  std::map<std::string, std::size_t> fibre_of;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    WGraph image = canonical_form(reduce_graph(strata[i], b)).graph;
    const bool contracted = image.n_edges() < strata[i].n_edges();
    const std::string key = canonical_key(image);
    auto [it, fresh] = fibre_of.emplace(key, out.fibres.size());
    if (fresh) out.fibres.emplace_back();
    out.fibres[it->second].push_back(i);
    out.entries.push_back({i, std::move(image), contracted});
  }
  return out;
}

ChamberDiff chamber_diff(const StrataQuery& q, const WeightData& a, const WeightData& b) {
  if (!a.same_labels(b) || !a.dominates(b)) throw Error("incomparable", "weights are not componentwise comparable");
  StrataQuery qa = q;
  qa.weights = a;
  return chamber_diff(enumerate_strata(qa), b);
}

}  // namespace wsm
