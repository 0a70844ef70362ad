#include <algorithm>
#include <functional>

#include "wsm/category.hpp"
#include "wsm/error.hpp"

namespace wsm {

namespace {

struct Factorization {
  std::vector<Contraction> steps;        // sigma_0 -> sigma_1 -> ... -> sigma_m
  std::vector<std::size_t> iota_flags;   // F_tau -> F_{sigma_m}
  std::vector<std::size_t> iota_vertex;  // V_tau -> V_{sigma_m}
};

Factorization factor(const Contraction& phi, const std::optional<std::vector<std::size_t>>& order) {
  const WGraph& sigma = phi.source;
  std::vector<bool> kept(sigma.flags.size(), false);
  for (std::size_t f : phi.flag_inj) kept[f] = true;

  Factorization out;
  WGraph cur = sigma;
  std::vector<std::size_t> origin(sigma.flags.size());  // current flag -> sigma flag
  for (std::size_t f = 0; f < origin.size(); ++f) origin[f] = f;
  std::vector<std::size_t> where(sigma.vertices.size());  // sigma vertex -> current vertex
  for (std::size_t v = 0; v < where.size(); ++v) where[v] = v;

  std::vector<std::size_t> queue;
  if (order) {
    for (std::size_t f : *order) {
      if (f >= sigma.flags.size() || kept[f] || sigma.is_tail(f)) {
        throw Error("bad-order", "flag " + std::to_string(f) + " is not on a collapsed edge");
      }
      queue.push_back(f);
    }
  }
  std::size_t next_in_order = 0;
  while (true) {
    std::optional<std::size_t> pick;
    if (order) {
      while (next_in_order < queue.size() && !pick) {
        const std::size_t target = queue[next_in_order++];
        for (std::size_t f = 0; f < cur.flags.size(); ++f) {
          if (origin[f] == target || origin[cur.partner(f)] == target) {
            pick = f;
            break;
          }
        }
      }
    } else {
      for (std::size_t f = 0; f < cur.flags.size() && !pick; ++f) {
        if (!kept[origin[f]] && cur.vertex_of(f) == cur.vertex_of(cur.partner(f))) pick = f;
      }
      for (std::size_t f = 0; f < cur.flags.size() && !pick; ++f) {
        if (!kept[origin[f]]) pick = f;
      }
    }
    if (!pick) break;
    Contraction e = contract_edge(cur, *pick);
    std::vector<std::size_t> next_origin;
    for (std::size_t f : e.flag_inj) next_origin.push_back(origin[f]);
    for (auto& w : where) w = e.vertex_surj[w];
    origin = std::move(next_origin);
    cur = e.target;
    out.steps.push_back(std::move(e));
  }
  for (std::size_t f = 0; f < cur.flags.size(); ++f) {
    if (!kept[origin[f]]) throw Error("bad-order", "the given order leaves edges uncontracted");
  }
  const WGraph& tau = phi.target;
  std::vector<std::size_t> inv(sigma.flags.size(), SIZE_MAX);
  for (std::size_t f = 0; f < cur.flags.size(); ++f) inv[origin[f]] = f;
  for (std::size_t x = 0; x < tau.flags.size(); ++x) out.iota_flags.push_back(inv[phi.flag_inj[x]]);
  out.iota_vertex.assign(tau.vertices.size(), SIZE_MAX);
  for (std::size_t u = 0; u < sigma.vertices.size(); ++u) out.iota_vertex[phi.vertex_surj[u]] = where[u];
  return out;
}

// Inverse of a vertex map that is bijective away from one merged vertex.
std::vector<std::size_t> vertex_preimage(const std::vector<std::size_t>& map, std::size_t target_size) {
  std::vector<std::size_t> inv(target_size, SIZE_MAX);
  for (std::size_t v = 0; v < map.size(); ++v) {
    if (inv[map[v]] == SIZE_MAX) inv[map[v]] = v;
  }
  return inv;
}

struct Square {
  WGraph pi;
  Contraction psi;          // pi -> previous pi
  CombinatorialMorphism b;  // pi -> step source
};

// Pullback of b : pi -> T along an elementary contraction e : S -> T.
Square elementary(const CombinatorialMorphism& b, const Contraction& e) {
  const WGraph& S = e.source;
  const WGraph& pi = b.source;
  std::vector<bool> kept(S.flags.size(), false);
  for (std::size_t f : e.flag_inj) kept[f] = true;
  std::size_t f = SIZE_MAX;
  for (std::size_t x = 0; x < S.flags.size(); ++x) {
    if (!kept[x]) {
      f = x;
      break;
    }
  }
  const std::size_t fb = S.partner(f);
  const std::size_t v1 = S.vertex_of(f);
  const std::size_t v2 = S.vertex_of(fb);
  const std::size_t v = e.vertex_surj[v1];
  const auto inv = vertex_preimage(e.vertex_surj, e.target.vertices.size());

  Square out;
  out.pi = pi;
  out.b = CombinatorialMorphism{{}, S, {}, {}, b.xi};
  for (std::size_t g : b.flag_map) out.b.flag_map.push_back(e.flag_inj[g]);
  for (std::size_t w : b.vertex_map) out.b.vertex_map.push_back(inv[w]);
  out.psi.target = pi;
  out.psi.flag_inj.resize(pi.flags.size());
  for (std::size_t g = 0; g < pi.flags.size(); ++g) out.psi.flag_inj[g] = g;
  out.psi.vertex_surj.resize(pi.vertices.size());
  for (std::size_t w = 0; w < pi.vertices.size(); ++w) out.psi.vertex_surj[w] = w;

  for (std::size_t vp = 0; vp < pi.vertices.size(); ++vp) {
    if (b.vertex_map[vp] != v) continue;
    if (v1 == v2) {
      // Loop: reattach it and lower the genus.
      out.pi.vertices[vp].genus -= 1;
      const auto [x, y] = out.pi.add_edge(vp, vp);
      out.b.flag_map.push_back(f);
      out.b.flag_map.push_back(fb);
      (void)x;
      (void)y;
      out.b.vertex_map[vp] = v1;
      continue;
    }
    const auto here = pi.flags_at(vp);
    Rational w1(1), w2(1);
    for (std::size_t g : here) {
      (S.vertex_of(out.b.flag_map[g]) == v1 ? w1 : w2) += pi.flags[g].weight;
    }
    const CurveClass c1 = apply(b.xi, S.vertices[v1].cls);
    const CurveClass c2 = apply(b.xi, S.vertices[v2].cls);
    const bool stable1 = vertex_ample(S.vertices[v1].genus, std::vector<Rational>{w1 - Rational(1), Rational(1)}, c1);
    const bool stable2 = vertex_ample(S.vertices[v2].genus, std::vector<Rational>{w2 - Rational(1), Rational(1)}, c2);
    if (stable1 && stable2) {
      out.pi.vertices[vp] = Vertex{S.vertices[v1].genus, c1};
      const std::size_t nv = out.pi.add_vertex(S.vertices[v2].genus, c2);
      for (std::size_t g : here) {
        if (S.vertex_of(out.b.flag_map[g]) == v2) out.pi.flags[g].vertex = nv;
      }
      out.pi.add_edge(vp, nv);
      out.b.flag_map.push_back(f);
      out.b.flag_map.push_back(fb);
      out.b.vertex_map[vp] = v1;
      out.b.vertex_map.push_back(v2);
      out.psi.vertex_surj.push_back(vp);
    } else if (stable1) {
      out.b.vertex_map[vp] = v1;
      for (std::size_t g : here) {
        if (S.vertex_of(out.b.flag_map[g]) == v2) out.b.flag_map[g] = f;
      }
    } else if (stable2) {
      out.b.vertex_map[vp] = v2;
      for (std::size_t g : here) {
        if (S.vertex_of(out.b.flag_map[g]) == v1) out.b.flag_map[g] = fb;
      }
    } else {
      throw Error("unstable-input", "stable pullback needs a stable source graph");
    }
  }
  out.b.source = out.pi;
  out.psi.source = out.pi;
  return out;
}

}  // namespace

StablePullback stable_pullback(const CombinatorialMorphism& a, const Contraction& phi,
                               const std::optional<std::vector<std::size_t>>& order) {
  if (!(a.target == phi.target)) throw Error("mismatch", "the morphisms do not share a target graph");
  if (auto v = validate_contraction(phi); !v.empty()) throw Error("invalid-contraction", v.front().message);
  const Factorization fac = factor(phi, order);

  // Pull back along the final isomorphism.
  const WGraph& last = fac.steps.empty() ? phi.source : fac.steps.back().target;
  CombinatorialMorphism b{a.source, last, {}, {}, a.xi};
  for (std::size_t g : a.flag_map) b.flag_map.push_back(fac.iota_flags[g]);
  for (std::size_t w : a.vertex_map) b.vertex_map.push_back(fac.iota_vertex[w]);
  Contraction psi = identity_contraction(a.source);

  for (std::size_t k = fac.steps.size(); k-- > 0;) {
    Square sq = elementary(b, fac.steps[k]);
    psi = compose_contraction(psi, sq.psi);
    b = std::move(sq.b);
  }
  return StablePullback{b.source, std::move(psi), std::move(b)};
}

GraphMorphism compose(const GraphMorphism& m2, const GraphMorphism& m1) {
  if (!(m1.target() == m2.source())) throw Error("mismatch", "morphisms are not composable");
  StablePullback sp = stable_pullback(m2.comb, m1.contraction);
  GraphMorphism out;
  out.comb = compose_comb(m1.comb, sp.b);
  out.contraction = compose_contraction(m2.contraction, sp.psi);
  return out;
}

IsogenyPullbackFrame isogeny_pullback_frame(const WGraph& sigma, const Isogeny& phi) {
  if (auto v = validate_isogeny(phi); !v.empty()) throw Error("invalid-isogeny", v.front().message);
  const AbsoluteStabilization abs = absolute_stabilization(sigma);
  if (!(abs.graph == phi.target)) {
    throw Error("sigma-mismatch", "the isogeny target is not the absolute stabilization of sigma");
  }
  const WGraph& ss = phi.target;
  IsogenyPullbackFrame out;
  WGraph& tp = out.tau_prime;
  tp = phi.source;
  for (auto& v : tp.vertices) v.cls = tp.zero_class();
  std::vector<std::size_t> fmap(sigma.flags.size(), SIZE_MAX);
  std::vector<std::size_t> vmap;
  for (std::size_t w = 0; w < tp.vertices.size(); ++w) vmap.push_back(abs.vertex_map[phi.vertex_surj[w]]);
  for (std::size_t x = 0; x < ss.flags.size(); ++x) fmap[abs.flag_map[x]] = phi.flag_inj[x];

  auto new_vertex = [&](std::size_t sigma_vertex) {
    const std::size_t w = tp.add_vertex(sigma.vertices[sigma_vertex].genus);
    vmap.push_back(sigma_vertex);
    return w;
  };
  auto other_flags = [&](std::size_t u, std::size_t in) {
    std::vector<std::size_t> rest;
    for (std::size_t h : sigma.flags_at(u)) {
      if (h != in) rest.push_back(h);
    }
    return rest;
  };

  for (const auto& [x, xb] : ss.edges()) {
    const std::size_t first = abs.flag_map[x];
    const std::size_t last = abs.flag_map[xb];
    std::size_t prev_tp = phi.flag_inj[x];
    std::size_t cur = first;
    while (sigma.partner(cur) != last) {
      const std::size_t in = sigma.partner(cur);
      const std::size_t u = sigma.vertex_of(in);
      const auto rest = other_flags(u, in);
      if (rest.size() != 1 || sigma.is_tail(rest[0])) throw Error("unsupported", "long edge with branching");
      const std::size_t w = new_vertex(u);
      const std::size_t a_in = tp.add_tail(w);
      const std::size_t a_out = tp.add_tail(w);
      tp.flags[prev_tp].partner = a_in;
      tp.flags[a_in].partner = prev_tp;
      fmap[in] = a_in;
      fmap[rest[0]] = a_out;
      prev_tp = a_out;
      cur = rest[0];
    }
    const std::size_t end = phi.flag_inj[xb];
    tp.flags[prev_tp].partner = end;
    tp.flags[end].partner = prev_tp;
  }

  for (std::size_t x : ss.tails()) {
    std::size_t cur = abs.flag_map[x];
    if (sigma.is_tail(cur)) continue;
    std::size_t prev_tp = phi.flag_inj[x];
    tp.flags[prev_tp].label.clear();
    while (true) {
      const std::size_t in = sigma.partner(cur);
      const std::size_t u = sigma.vertex_of(in);
      const auto rest = other_flags(u, in);
      const std::size_t w = new_vertex(u);
      const std::size_t a_in = tp.add_tail(w);
      tp.flags[prev_tp].partner = a_in;
      tp.flags[a_in].partner = prev_tp;
      tp.flags[prev_tp].weight = Rational(1);
      fmap[in] = a_in;
      const bool end = std::all_of(rest.begin(), rest.end(), [&](std::size_t h) { return sigma.is_tail(h); });
      if (end) {
        for (std::size_t h : rest) fmap[h] = tp.add_tail(w, sigma.flags[h].weight, sigma.flags[h].label);
        break;
      }
      if (rest.size() != 1) throw Error("unsupported", "long tail with branching");
      const std::size_t a_out = tp.add_tail(w);
      fmap[rest[0]] = a_out;
      prev_tp = a_out;
      cur = rest[0];
    }
  }
  if (std::find(fmap.begin(), fmap.end(), SIZE_MAX) != fmap.end()) {
    throw Error("unsupported", "sigma has parts that vanish under absolute stabilization");
  }
  std::vector<bool> covered(sigma.vertices.size(), false);
  for (std::size_t v : vmap) covered[v] = true;
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw Error("unsupported", "sigma has components that vanish under absolute stabilization");
  }
  out.phi_prime = Isogeny{tp, sigma, fmap, vmap};
  out.a = CombinatorialMorphism{phi.source, tp, {}, {}, {}};
  for (std::size_t g = 0; g < phi.source.flags.size(); ++g) out.a.flag_map.push_back(g);
  for (std::size_t w = 0; w < phi.source.vertices.size(); ++w) out.a.vertex_map.push_back(w);
  return out;
}

std::vector<std::vector<CurveClass>> v_structures(const WGraph& tau_prime, const Isogeny& phi_prime) {
  const WGraph& sigma = phi_prime.target;
  const std::size_t rank = sigma.profile.rank();
  std::vector<std::vector<std::size_t>> fibres(sigma.vertices.size());
  for (std::size_t w = 0; w < tau_prime.vertices.size(); ++w) fibres[phi_prime.vertex_surj[w]].push_back(w);

  std::vector<std::vector<CurveClass>> out;
  std::vector<CurveClass> assign(tau_prime.vertices.size(), CurveClass(rank));
  // Vertices in index order; each takes a class bounded by what its fibre still has.
  std::vector<CurveClass> remaining;
  for (const auto& v : sigma.vertices) remaining.push_back(v.cls);
  std::vector<std::size_t> left_in_fibre(sigma.vertices.size());
  for (std::size_t v = 0; v < fibres.size(); ++v) left_in_fibre[v] = fibres[v].size();

  std::function<void(std::size_t)> rec = [&](std::size_t w) {
    if (w == tau_prime.vertices.size()) {
      WGraph g = tau_prime;
      for (std::size_t i = 0; i < g.vertices.size(); ++i) g.vertices[i].cls = assign[i];
      if (!is_stable(g)) return;
      Isogeny iso = phi_prime;
      iso.source = g;
      if (!validate_isogeny(iso).empty()) return;
      out.push_back(assign);
      return;
    }
    const std::size_t v = phi_prime.vertex_surj[w];
    --left_in_fibre[v];
    if (left_in_fibre[v] == 0) {
      assign[w] = remaining[v];
      const CurveClass saved = remaining[v];
      remaining[v] = CurveClass(rank);
      rec(w + 1);
      remaining[v] = saved;
    } else {
      // All c <= remaining[v] in lexicographic order.
      std::vector<std::int64_t> c(rank, 0);
      const CurveClass saved = remaining[v];
      while (true) {
        assign[w] = CurveClass(c);
        remaining[v] = saved - assign[w];
        rec(w + 1);
        std::size_t k = rank;
        while (k > 0 && c[k - 1] == saved[k - 1]) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
      }
      remaining[v] = saved;
    }
    ++left_in_fibre[v];
  };
  rec(0);
  return out;
}

std::vector<PullbackComponent> cartesian_isogeny_pullback(const WGraph& sigma, const Isogeny& phi) {
  const IsogenyPullbackFrame frame = isogeny_pullback_frame(sigma, phi);
  std::vector<PullbackComponent> out;
  for (auto& classes : v_structures(frame.tau_prime, frame.phi_prime)) {
    PullbackComponent c;
    c.tau = frame.tau_prime;
    for (std::size_t i = 0; i < classes.size(); ++i) c.tau.vertices[i].cls = classes[i];
    c.a = frame.a;
    c.a.target = c.tau;
    c.phi = frame.phi_prime;
    c.phi.source = c.tau;
    c.classes = std::move(classes);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace wsm
