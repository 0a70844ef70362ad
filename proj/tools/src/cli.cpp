#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "wsm/category.hpp"
#include "wsm/chambers.hpp"
#include "wsm/document.hpp"
#include "wsm/error.hpp"
#include "wsm/gw_dim.hpp"
#include "wsm/reduction.hpp"
#include "wsm/strata.hpp"

namespace wsm::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument load_graph(const std::string& path) { return parse_document(parse_json_text(read_file(path))); }

std::string subset_str(const WeightData& w, Subset s) {
  std::string out = "{";
  const auto names = w.labels_of(s);
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

Json subset_json(const WeightData& w, Subset s) { return w.labels_of(s); }

Json rationals_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

Json weights_json(const WeightData& w) {
  return {{"labels", w.labels()}, {"weights", rationals_json(w.weights())}};
}

// A tail named by its label, or by "#<flag>".
std::size_t resolve_tail(const WGraph& g, const std::string& name) {
  if (!name.empty() && name[0] == '#') {
    std::size_t f = 0;
    try {
      f = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      throw UsageError("bad flag reference '" + name + "'");
    }
    if (f >= g.flags.size() || !g.is_tail(f)) throw Error("not-a-tail", "flag " + std::to_string(f) + " is not a tail");
    return f;
  }
  return g.tail_by_label(name);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Weighted stable maps toolkit"};
    app.name("wsm");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", opt_.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::function<void()> action;
    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    std::string graph_path, to, from, weights, between, tail, tail2, with, tails, kind = "fine", sigma_path, iso_path;
    std::string beta = "", profile = "0", reduce_to;
    std::size_t n = 0, flag = 0;
    int genus = 0, max_edges = 0;
    std::optional<int> chamber_genus;
    bool absolute = false, dot = false;
    std::vector<std::string> inserts;

    auto* validate_cmd = sub("validate", "Check a graph document");
    validate_cmd->add_option("--graph", graph_path, "Graph document")->required();
    validate_cmd->callback([&] { action = [&] { cmd_validate(graph_path); }; });

    auto* stabilize_cmd = sub("stabilize", "Stabilize a graph");
    stabilize_cmd->add_option("--graph", graph_path, "Graph document")->required();
    stabilize_cmd->add_flag("--absolute", absolute, "Strip classes before stabilizing");
    stabilize_cmd->callback([&] { action = [&] { cmd_stabilize(graph_path, absolute); }; });

    auto* reduce_cmd = sub("reduce", "Lower tail weights and contract");
    reduce_cmd->add_option("--graph", graph_path, "Graph document")->required();
    reduce_cmd->add_option("--to", to, "Target weights")->required();
    reduce_cmd->callback([&] { action = [&] { emit_graph(reduce_graph(load_graph(graph_path).graph, WeightData::parse(to))); }; });

    auto* forget_cmd = sub("forget", "Forget a tail");
    forget_cmd->add_option("--graph", graph_path, "Graph document")->required();
    forget_cmd->add_option("--tail", tail, "Tail label or #flag")->required();
    forget_cmd->callback([&] {
      action = [&] {
        const WGraph g = load_graph(graph_path).graph;
        emit_graph(forget_tail(g, resolve_tail(g, tail)));
      };
    });

    auto* combine_cmd = sub("combine", "Combine tails at one vertex");
    combine_cmd->add_option("--graph", graph_path, "Graph document")->required();
    combine_cmd->add_option("--tails", tails, "Comma-separated tails")->required();
    combine_cmd->callback([&] {
      action = [&] {
        const WGraph g = load_graph(graph_path).graph;
        std::vector<std::size_t> group;
        for (const auto& t : split(tails, ',')) group.push_back(resolve_tail(g, t));
        emit_graph(combine_tails(g, group));
      };
    });

    auto* glue_cmd = sub("glue", "Glue two weight-one tails");
    glue_cmd->add_option("--graph", graph_path, "Graph document")->required();
    glue_cmd->add_option("--tail", tail, "Tail of the first graph")->required();
    glue_cmd->add_option("--with", with, "Second graph (omit to self-glue)");
    glue_cmd->add_option("--tail2", tail2, "Tail of the second graph")->required();
    glue_cmd->callback([&] {
      action = [&] {
        const WGraph g = load_graph(graph_path).graph;
        if (with.empty()) {
          emit_graph(self_glue(g, resolve_tail(g, tail), resolve_tail(g, tail2)));
        } else {
          const WGraph h = load_graph(with).graph;
          emit_graph(glue(g, resolve_tail(g, tail), h, resolve_tail(h, tail2)));
        }
      };
    });

    auto* cut_cmd = sub("cut", "Cut an edge into two tails");
    cut_cmd->add_option("--graph", graph_path, "Graph document")->required();
    cut_cmd->add_option("--flag", flag, "A flag of the edge")->required();
    cut_cmd->callback([&] { action = [&] { emit_graph(cut_edge(load_graph(graph_path).graph, flag)); }; });

    auto* chambers_cmd = sub("chambers", "Enumerate chambers of weight space");
    chambers_cmd->add_option("--n", n, "Number of labels")->required();
    chambers_cmd->add_option("--kind", kind, "fine or coarse")->check(CLI::IsMember({"fine", "coarse"}));
    chambers_cmd->add_option("--genus", chamber_genus, "Restrict to admissible weights for this genus");
    chambers_cmd->callback([&] { action = [&] { cmd_chambers(n, parse_wall_kind(kind), chamber_genus); }; });

    auto* walls_cmd = sub("walls", "Walls through a point or between two points");
    walls_cmd->add_option("--weights", weights, "Weight data")->required();
    walls_cmd->add_option("--between", between, "Second weight data");
    walls_cmd->add_option("--kind", kind, "fine or coarse")->check(CLI::IsMember({"fine", "coarse"}));
    walls_cmd->callback([&] { action = [&] { cmd_walls(weights, between, parse_wall_kind(kind)); }; });

    auto* classify_cmd = sub("classify", "Classify a reduction morphism");
    classify_cmd->add_option("--from", from, "Larger weights")->required();
    classify_cmd->add_option("--to", to, "Smaller weights")->required();
    classify_cmd->callback([&] { action = [&] { cmd_classify(from, to); }; });

    auto* path_cmd = sub("path", "Breakpoints of a reduction");
    path_cmd->add_option("--from", from, "Larger weights")->required();
    path_cmd->add_option("--to", to, "Smaller weights")->required();
    path_cmd->callback([&] { action = [&] { cmd_path(from, to); }; });

    auto* pullback_cmd = sub("pullback", "Cartesian pullback along an isogeny");
    pullback_cmd->add_option("--sigma", sigma_path, "Graph document of sigma")->required();
    pullback_cmd->add_option("--isogeny", iso_path, "Isogeny document")->required();
    pullback_cmd->callback([&] { action = [&] { cmd_pullback(sigma_path, iso_path); }; });

    auto add_query = [&](CLI::App* s) {
      s->add_option("--genus", genus, "Total genus");
      s->add_option("--weights", weights, "Weight data")->required();
      s->add_option("--beta", beta, "Total curve class");
      s->add_option("--profile", profile, "dim_v:kappa");
    };
    auto query = [&] {
      const TargetProfile p = TargetProfile::parse(profile);
      CurveClass b = beta.empty() ? CurveClass(p.rank()) : CurveClass::parse(beta);
      return StrataQuery{genus, WeightData::parse(weights), b, p, max_edges};
    };

    auto* strata_cmd = sub("strata", "Enumerate boundary strata");
    add_query(strata_cmd);
    strata_cmd->add_option("--max-edges", max_edges, "Edge bound");
    strata_cmd->add_flag("--dot", dot, "Emit the contraction poset as DOT");
    strata_cmd->add_option("--reduce-to", reduce_to, "Report images under reduction to these weights");
    strata_cmd->callback([&] { action = [&] { cmd_strata(query(), dot, reduce_to); }; });

    auto* poset_cmd = sub("poset", "Contraction poset of strata");
    add_query(poset_cmd);
    poset_cmd->add_option("--max-edges", max_edges, "Edge bound");
    poset_cmd->add_flag("--dot", dot, "Emit DOT");
    poset_cmd->callback([&] { action = [&] { cmd_poset(query(), dot); }; });

    auto* dim_cmd = sub("dim", "Virtual dimension");
    add_query(dim_cmd);
    dim_cmd->callback([&] { action = [&] { cmd_dim(query()); }; });

    auto* gate_cmd = sub("gate", "Dimension check for a correlator");
    add_query(gate_cmd);
    gate_cmd->add_option("--insert", inserts, "label:codim[:k], repeatable");
    gate_cmd->callback([&] { action = [&] { cmd_gate(query(), inserts); }; });

    auto* dot_cmd = sub("dot", "Graphviz rendering of a graph");
    dot_cmd->add_option("--graph", graph_path, "Graph document")->required();
    dot_cmd->callback([&] { action = [&] { out_ << to_dot(load_graph(graph_path).graph); }; });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kUsage;
    }
    try {
      action();
      return kOk;
    } catch (const UsageError& e) {
      err_ << "error[usage]: " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err_ << "error[" << e.code() << "]: " << e.what() << "\n";
      return kFailure;
    }
  }

 private:
  void emit_graph(const WGraph& g) { out_ << dump(serialize_graph(g)); }

  void cmd_validate(const std::string& path) {
    const WGraph g = load_graph(path).graph;
    const GraphStats st = stats(g);
    const auto unstable = unstable_vertices(g);
    if (opt_.json()) {
      out_ << dump({{"valid", true},
                    {"stable", unstable.empty()},
                    {"unstable_vertices", unstable},
                    {"genus", st.genus_total},
                    {"beta", st.beta_total.coords()},
                    {"tails", st.n_tails},
                    {"edges", st.n_edges},
                    {"components", st.n_components},
                    {"vdim", st.vdim}});
    } else {
      out_ << "valid\n";
      out_ << (unstable.empty() ? "stable" : "unstable") << "\n";
      out_ << "genus " << st.genus_total << ", beta " << st.beta_total.str() << ", tails " << st.n_tails << ", edges "
           << st.n_edges << ", components " << st.n_components << ", vdim " << st.vdim << "\n";
    }
  }

  static Json step_json(const StabilizationStep& s) {
    Json j = {{"kind", to_string(s.kind)}, {"vertex", s.vertex}, {"removed_flags", s.removed_flags},
              {"dropped_tails", s.dropped_tails}};
    if (s.new_tail) j["new_tail"] = *s.new_tail;
    if (s.spliced) j["spliced"] = {s.spliced->first, s.spliced->second};
    return j;
  }

  void cmd_stabilize(const std::string& path, bool absolute) {
    const WGraph g = load_graph(path).graph;
    WGraph result;
    std::vector<StabilizationStep> trace;
    std::vector<std::size_t> vmap, fmap;
    if (absolute) {
      AbsoluteStabilization a = absolute_stabilization(g);
      result = a.graph;
      trace = a.trace;
      vmap = a.vertex_map;
      fmap = a.flag_map;
    } else {
      StabilizationResult r = stabilize(g);
      result = r.graph;
      trace = r.trace;
      vmap = r.vertex_map;
      fmap = r.flag_map;
    }
    if (opt_.json()) {
      Json steps = Json::array();
      for (const auto& s : trace) steps.push_back(step_json(s));
      out_ << dump({{"graph", serialize_graph(result)}, {"trace", steps}, {"vertex_map", vmap}, {"flag_map", fmap}});
      return;
    }
    for (const auto& s : trace) {
      err_ << to_string(s.kind) << " at vertex " << s.vertex;
      if (!s.dropped_tails.empty()) {
        err_ << ", dropped tails";
        for (auto t : s.dropped_tails) err_ << " " << t;
      }
      err_ << "\n";
    }
    emit_graph(result);
  }

  void cmd_chambers(std::size_t n, WallKind kind, std::optional<int> genus) {
    const auto chambers = enumerate_chambers(n, kind, genus);
    const auto walls = candidate_walls(n, kind);
    const WeightData labels = WeightData::from_weights(std::vector<Rational>(n, Rational(1)));
    if (opt_.json()) {
      Json list = Json::array();
      for (const auto& c : chambers) list.push_back({{"signature", c.signature.str()}, {"witness", rationals_json(c.witness)}});
      Json wall_list = Json::array();
      for (Subset w : walls) wall_list.push_back(subset_json(labels, w));
      out_ << dump({{"n", n}, {"kind", std::string(to_string(kind))}, {"walls", wall_list}, {"chambers", list}});
      return;
    }
    out_ << chambers.size() << " chambers\n";
    out_ << "walls:";
    for (Subset w : walls) out_ << " " << subset_str(labels, w);
    out_ << "\n";
    for (const auto& c : chambers) {
      out_ << c.signature.str() << "  ";
      for (std::size_t i = 0; i < c.witness.size(); ++i) out_ << (i ? "," : "") << c.witness[i];
      out_ << "\n";
    }
  }

  void cmd_walls(const std::string& weights, const std::string& between, WallKind kind) {
    const WeightData a = WeightData::parse(weights);
    std::vector<Subset> through = walls_through(a, kind);
    std::optional<std::vector<Subset>> crossed;
    if (!between.empty()) crossed = walls_between(a, WeightData::parse(between), kind);
    if (opt_.json()) {
      Json j = {{"weights", weights_json(a)}};
      Json t = Json::array();
      for (Subset s : through) t.push_back(subset_json(a, s));
      j["on"] = t;
      if (crossed) {
        Json c = Json::array();
        for (Subset s : *crossed) c.push_back(subset_json(a, s));
        j["between"] = c;
      }
      out_ << dump(j);
      return;
    }
    out_ << "on:";
    for (Subset s : through) out_ << " " << subset_str(a, s);
    out_ << "\n";
    if (crossed) {
      out_ << "between:";
      for (Subset s : *crossed) out_ << " " << subset_str(a, s);
      out_ << "\n";
    }
  }

  void cmd_classify(const std::string& from, const std::string& to) {
    const WeightData a = WeightData::parse(from);
    const WeightData b = WeightData::parse(to);
    const ReductionClass c = classify_reduction(a, b);
    const auto divisors = contracted_divisors(a, b);
    for (const auto& d : divisors) {
      if (d.on_wall) err_ << "warning: target weights lie on the wall " << subset_str(a, d.I) << "\n";
    }
    if (opt_.json()) {
      Json ds = Json::array();
      for (const auto& d : divisors) {
        ds.push_back({{"I", subset_json(a, d.I)}, {"J", subset_json(a, d.J)}, {"exceptional", d.is_exceptional}, {"on_wall", d.on_wall}});
      }
      Json j = {{"class", to_string(c.kind)}};
      if (c.kind == ReductionClass::Kind::blowup) j["center"] = subset_json(a, c.I);
      j["divisors"] = ds;
      out_ << dump(j);
      return;
    }
    out_ << describe(c, a) << "\n";
    for (const auto& d : divisors) {
      out_ << "D " << subset_str(a, d.I) << " | " << subset_str(a, d.J) << (d.is_exceptional ? "  exceptional" : "") << "\n";
    }
  }

  void cmd_path(const std::string& from, const std::string& to) {
    const WeightData a = WeightData::parse(from);
    const WeightData b = WeightData::parse(to);
    const ReductionPath p = reduction_path(a, b);
    if (opt_.json()) {
      Json steps = Json::array();
      for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
        Json walls = Json::array();
        for (Subset s : p.crossed_walls[i]) walls.push_back(subset_json(a, s));
        steps.push_back({{"lambda", p.breakpoints[i].str()}, {"weights", weights_json(interpolate(a, b, p.breakpoints[i]))}, {"walls", walls}});
      }
      out_ << dump({{"from", weights_json(a)}, {"to", weights_json(b)}, {"breakpoints", steps}});
      return;
    }
    out_ << "breakpoints:";
    for (const auto& l : p.breakpoints) out_ << " " << l;
    out_ << "\n";
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
      out_ << "lambda " << p.breakpoints[i] << " (" << interpolate(a, b, p.breakpoints[i]).str() << "):";
      for (Subset s : p.crossed_walls[i]) out_ << " " << subset_str(a, s);
      out_ << "\n";
    }
    out_ << "factors:";
    std::vector<Rational> stops{Rational(1)};
    stops.insert(stops.end(), p.breakpoints.begin(), p.breakpoints.end());
    stops.push_back(Rational(0));
    for (std::size_t i = stops.size() - 1; i > 0; --i) {
      out_ << " rho[" << stops[i] << "<-" << stops[i - 1] << "]";
    }
    out_ << "\n";
  }

  void cmd_pullback(const std::string& sigma_path, const std::string& iso_path) {
    const WGraph sigma = load_graph(sigma_path).graph;
    const Isogeny phi = parse_isogeny(parse_json_text(read_file(iso_path)), absolute_stabilization(sigma).graph);
    const auto comps = cartesian_isogeny_pullback(sigma, phi);
    Json list = Json::array();
    for (const auto& c : comps) {
      Json classes = Json::array();
      for (const auto& k : c.classes) classes.push_back(k.coords());
      list.push_back({{"tau", serialize_graph(c.tau)},
                      {"classes", classes},
                      {"flag_map", c.phi.flag_inj},
                      {"vertex_map", c.phi.vertex_surj}});
    }
    if (opt_.json()) {
      out_ << dump(list);
      return;
    }
    out_ << comps.size() << " components\n";
    for (std::size_t i = 0; i < comps.size(); ++i) {
      out_ << "# component " << i << ":";
      for (const auto& k : comps[i].classes) out_ << " " << k.str();
      out_ << "\n" << dump(list[i]["tau"]);
    }
  }

  void cmd_strata(const StrataQuery& q, bool dot, const std::string& reduce_to) {
    const auto strata = enumerate_strata(q);
    if (dot) {
      out_ << poset_dot(contraction_poset(strata));
      return;
    }
    std::optional<ChamberDiff> diff;
    if (!reduce_to.empty()) {
      const WeightData b = WeightData::parse(reduce_to);
      if (!q.weights.same_labels(b) || !q.weights.dominates(b)) throw Error("incomparable", "weights are not comparable");
      diff = chamber_diff(strata, b);
    }
    if (opt_.json()) {
      Json list = Json::array();
      for (std::size_t i = 0; i < strata.size(); ++i) {
        const GraphStats st = stats(strata[i]);
        Json item = {{"codim", st.n_edges}, {"vdim", st.vdim}, {"graph", serialize_graph(strata[i])}};
        if (diff) {
          item["image"] = serialize_graph(diff->entries[i].image);
          item["contracted"] = diff->entries[i].contracted;
        }
        list.push_back(std::move(item));
      }
      out_ << dump(list);
      return;
    }
    out_ << strata.size() << " strata\n";
    for (std::size_t i = 0; i < strata.size(); ++i) {
      const GraphStats st = stats(strata[i]);
      out_ << i << "  codim " << st.n_edges << "  vdim " << st.vdim << "  " << describe(strata[i]);
      if (diff) out_ << (diff->entries[i].contracted ? "  contracted" : "  kept");
      out_ << "\n";
    }
  }

  void cmd_poset(const StrataQuery& q, bool dot) {
    const StratumPoset p = contraction_poset(enumerate_strata(q));
    if (dot) {
      out_ << poset_dot(p);
      return;
    }
    if (opt_.json()) {
      Json nodes = Json::array();
      for (const auto& g : p.nodes) nodes.push_back(serialize_graph(g));
      Json covers = Json::array();
      for (const auto& c : p.covers) covers.push_back({{"from", c.from}, {"to", c.to}, {"flag", c.flag}});
      out_ << dump({{"nodes", nodes}, {"covers", covers}});
      return;
    }
    out_ << p.nodes.size() << " strata, " << p.covers.size() << " covers\n";
    for (const auto& c : p.covers) out_ << c.from << " -> " << c.to << "  (flag " << c.flag << ")\n";
  }

  void cmd_dim(const StrataQuery& q) {
    const std::int64_t d = vdim_moduli(q.genus_total, q.weights, q.beta_total, q.profile);
    if (opt_.json()) {
      out_ << dump({{"vdim", d}});
    } else {
      out_ << d << "\n";
    }
  }

  void cmd_gate(const StrataQuery& q, const std::vector<std::string>& inserts) {
    std::vector<Insertion> ins;
    for (const auto& s : inserts) ins.push_back(parse_insertion(s));
    const GateResult r = dimension_gate(q.genus_total, q.weights, q.beta_total, q.profile, ins);
    if (opt_.json()) {
      out_ << dump({{"passes", r.passes}, {"vdim", r.vdim}, {"degree", r.degree}, {"deficit", r.deficit}});
      return;
    }
    if (r.passes) {
      out_ << "passes\n";
    } else {
      out_ << "fails(" << (r.deficit > 0 ? "+" : "") << r.deficit << ")\n";
    }
  }

  std::ostream& out_;
  std::ostream& err_;
  Options opt_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return Runner(out, err).run(argc, argv);
  } catch (const Error& e) {
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return kFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wsm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wsm::cli
