#pragma once

// Command dispatch and JSON reporting for the sdtool front end. Reports follow the
// "sd-report/1" schema: {schema, command, parameters, results, summary, verdict,
// provenance}; keys are sorted, so identical inputs give byte-identical output.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sd/balls.hpp"
#include "sd/colorings.hpp"
#include "sd/duality.hpp"
#include "sd/error.hpp"
#include "sd/grad.hpp"
#include "sd/graph.hpp"
#include "sd/hom.hpp"
#include "sd/io.hpp"
#include "sd/powers.hpp"
#include "sd/treedepth.hpp"

namespace sd::cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "sd-report/1";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kFail = 1, kError = 2 };

// Finite list of graphs standing in for a class: a file or a built-in generator.
struct CorpusSpec {
  std::string source;  // path, or "gen:<n_max>" for all graphs up to n_max vertices
  std::string format;  // "g6", "edges" or "" (by extension / content)
  GraphFilter filter;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<Graph> read_graphs(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  std::string fmt = format;
  if (fmt.empty()) {
    if (path.ends_with(".g6"))
      fmt = "g6";
    else if (path.ends_with(".edges") || path.ends_with(".txt"))
      fmt = "edges";
    else
      fmt = text.find(' ') != std::string::npos ? "edges" : "g6";
  }
  if (fmt == "edges") return {parse_edge_list(text)};
  if (fmt != "g6") throw Error("unknown format '" + fmt + "'");
  std::vector<Graph> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_graph6(line));
  }
  return out;
}

// Resolves to a finite list without isomorphic duplicates (for graphs the
// canonical labelling can handle), in input order.
inline std::vector<Graph> resolve_corpus(const CorpusSpec& spec) {
  std::vector<Graph> raw;
  if (spec.source.starts_with("gen:")) {
    raw = generate_all_graphs(std::stoul(spec.source.substr(4)));
  } else {
    raw = read_graphs(spec.source, spec.format);
  }
  std::vector<Graph> out;
  std::set<std::string> seen;
  for (auto& g : raw) {
    if (!spec.filter.accepts(g)) continue;
    if (g.order() <= kCanonicalLimit && !seen.insert(to_graph6(canonical_form(g))).second) continue;
    out.push_back(std::move(g));
  }
  return out;
}

// Maps f over items on a bounded pool of threads; results keep input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, std::size_t jobs, F&& f) {
  using R = decltype(f(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        slots[i].emplace(f(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(jobs, items.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoders
// ---------------------------------------------------------------------------

inline json to_json(const Graph& g) { return {{"order", g.order()}, {"size", g.size()}, {"graph6", to_graph6(g)}}; }
inline json to_json(const VertexSet& s) { return s.members(); }
inline json to_json(const Rational& r) { return {{"value", r.str()}, {"num", r.num()}, {"den", r.den()}}; }

inline json to_json(const RootedForest& f) {
  json parents = json::array();
  for (const auto& p : f.parent) parents.push_back(p ? json(*p) : json(nullptr));
  return parents;
}

inline json to_json(const BallFamily& f) {
  json balls = json::array();
  for (const auto& b : f.balls) balls.push_back(to_json(b));
  return {{"radius_bound", f.r}, {"balls", balls}};
}

inline json to_json(const ChromaticResult& c) {
  return {{"lower", c.lower}, {"upper", c.upper}, {"exact", c.exact}};
}

inline json odd_girth_json(const std::optional<std::size_t>& g) { return g ? json(*g) : json("infinity"); }

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

struct Options {
  std::string in, out, format, forbid, dual, templ, colors, graph_out;
  std::optional<std::size_t> p, rank, p_override, claim, k_max, max_degree, min_order, complete_template;
  std::size_t limit_nodes = 0, seed = 0, rep_order = kRepresentativeOrder, jobs = 1, power_cap = kPowerVertexCap;
  std::string kind = "path";
  bool exhaustive = false, connected = false, triangle_free = false, claim_from_dual = false, timing = false;
  bool core_base = false;
};

struct RunResult {
  int exit_code = kPass;
  std::string output;  // the JSON report, or the error message for exit code 2
};

namespace detail {

inline std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw Error(std::string("missing required flag ") + flag);
  return *v;
}

inline Coloring parse_colors(const std::string& text, std::size_t n) {
  std::vector<std::size_t> raw;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) raw.push_back(std::stoul(tok));
  if (raw.size() != n) throw Error("--colors lists " + std::to_string(raw.size()) + " colours for " + std::to_string(n) + " vertices");
  return Coloring(raw);
}

inline json params_json(const std::string& command, const Options& o) {
  json p;
  p["in"] = o.in;
  if (!o.format.empty()) p["format"] = o.format;
  if (o.p) p["p"] = *o.p;
  if (o.rank) p["rank"] = *o.rank;
  if (!o.forbid.empty()) p["forbid"] = o.forbid;
  if (o.p_override) p["p_override"] = *o.p_override;
  if (o.claim) p["claim"] = *o.claim;
  if (o.k_max) p["k_max"] = *o.k_max;
  if (o.max_degree) p["max_degree"] = *o.max_degree;
  if (o.min_order) p["min_order"] = *o.min_order;
  if (o.connected) p["connected"] = true;
  if (o.triangle_free) p["triangle_free"] = true;
  if (!o.colors.empty()) p["colors"] = o.colors;
  if (!o.dual.empty()) p["dual"] = o.dual;
  if (command == "exact-power") p["kind"] = o.kind;
  if (command == "experiment-odd-power") p["claim_from_dual"] = o.claim_from_dual;
  if (command.starts_with("dual") || command == "regular-partition" || command == "experiment-odd-power")
    p["representative_order"] = o.rep_order;
  p["exhaustive"] = o.exhaustive;
  return p;
}

inline DualOptions dual_options(const Options& o) {
  DualOptions d;
  d.p_override = o.p_override;
  d.representative_order = o.rep_order;
  d.power_cap = o.power_cap;
  d.reduce_base_to_core = o.core_base;
  return d;
}

inline json provenance_json(const DualProvenance& prov) {
  json parts = json::array();
  for (const auto& g : prov.base_parts) parts.push_back(to_json(g));
  json exhaustive = json::array();
  for (bool e : prov.exhaustive) exhaustive.push_back(e);
  return {{"p", prov.p},
          {"colors", prov.colors},
          {"base_parts", parts},
          {"base_order", prov.base_order},
          {"power_order", prov.power_order},
          {"coloring_exhaustive", exhaustive}};
}

inline json duality_json(const DualityReport& rep, std::span<const Graph> corpus) {
  json forb = json::array();
  for (auto s : rep.forbidden_to_dual) forb.push_back(to_string(s));
  json items = json::array();
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    const auto& o = rep.outcomes[i];
    json item = {{"graph", to_json(corpus[i])},
                 {"in_forb", to_string(o.in_forb)},
                 {"to_dual", to_string(o.to_dual)},
                 {"evidence", to_string(o.evidence)},
                 {"pass", o.pass}};
    if (o.to_dual == HomStatus::found) item["witness"] = o.witness;
    if (o.culprit) item["forbidden_image_of"] = *o.culprit;
    items.push_back(std::move(item));
  }
  return {{"forbidden_to_dual", forb}, {"corpus", items}};
}

}  // namespace detail

// Runs one subcommand on already-parsed options and returns its report.
inline RunResult execute(const std::string& command, const Options& o) {
  using namespace detail;
  const auto started = std::chrono::steady_clock::now();
  const HomOptions hom{o.limit_nodes};
  CorpusSpec spec{o.in, o.format, GraphFilter{o.min_order.value_or(0), o.max_degree, o.connected, o.triangle_free}};
  if (o.in.empty()) throw Error("missing required flag --in");
  const auto graphs = resolve_corpus(spec);
  auto forbidden = [&] {
    if (o.forbid.empty()) throw Error("missing required flag --forbid");
    return read_graphs(o.forbid, "");
  };
  auto single = [&]() -> const Graph& {
    if (graphs.size() != 1) throw Error("command expects exactly one input graph, got " + std::to_string(graphs.size()));
    return graphs.front();
  };

  json results = json::array();
  json summary = json::object();
  std::optional<bool> verdict;

  if (command == "td") {
    auto rows = parallel_map(graphs, o.jobs, [&](const Graph& g) {
      if (o.exhaustive && g.order() > kTreeDepthLimit) throw LimitExceeded("exact tree-depth is capped at 16 vertices");
      const auto cert = tree_depth(g);
      return json{{"graph", to_json(g)}, {"value", cert.value}, {"exact", cert.exact},
                  {"forest", to_json(cert.forest)}, {"verified", verify_td(g, cert)}};
    });
    results = rows;
  } else if (command == "grad") {
    const std::size_t r = o.rank.value_or(0);
    results = parallel_map(graphs, o.jobs, [&](const Graph& g) {
      if (o.exhaustive && g.order() > kBallFamilyLimit) throw LimitExceeded("exhaustive grad is capped at 12 vertices");
      const auto res = grad_r(g, r);
      return json{{"graph", to_json(g)}, {"rank", r}, {"grad", to_json(res.value)},
                  {"bound", res.exact ? "exact" : "lower bound"}, {"witness", to_json(res.witness)},
                  {"grad0_flow", to_json(grad_0_flow(g))}};
    });
  } else if (command == "orient") {
    results = parallel_map(graphs, o.jobs, [&](const Graph& g) {
      const auto orient = min_indegree_orientation(g);
      const auto degen = degeneracy(g);
      json arcs = json::array();
      for (auto [t, h] : orient.arcs) arcs.push_back({t, h});
      return json{{"graph", to_json(g)}, {"grad0", to_json(grad_0_flow(g))}, {"max_indegree", orient.max_indegree},
                  {"arcs", arcs}, {"degeneracy", degen.d}, {"elimination_order", degen.order}};
    });
  } else if (command == "centered-verify") {
    const Graph& g = single();
    const auto c = parse_colors(o.colors, g.order());
    const auto check = verify_p_centered(g, c, need(o.p, "--p"));
    json r{{"graph", to_json(g)}, {"p_centered", check.ok}, {"colors_used", c.colors()}};
    if (check.counterexample) r["counterexample"] = to_json(*check.counterexample);
    results.push_back(r);
    verdict = check.ok;
  } else if (command == "lowtd-find") {
    const std::size_t p = need(o.p, "--p");
    results = parallel_map(graphs, o.jobs, [&](const Graph& g) {
      const auto found = find_low_td_coloring(g, p, o.k_max.value_or(g.order()), o.exhaustive);
      json r{{"graph", to_json(g)}, {"exhaustive", found.exhaustive}, {"found", found.coloring.has_value()}};
      if (found.coloring) {
        r["colors"] = found.coloring->colors();
        r["coloring"] = found.coloring->values();
      }
      return r;
    });
  } else if (command == "power") {
    const Graph& u = single();
    Graph h;
    if (o.complete_template)
      h = graphs::complete(*o.complete_template);
    else if (!o.templ.empty())
      h = read_graphs(o.templ, "").at(0);
    else
      throw Error("power needs --template <file> or --complete <n>");
    const std::size_t p = need(o.p, "--p");
    const auto tp = truncated_power(u, h, p, o.power_cap);
    const auto local = power_local_property(tp, hom);
    const auto expected = power_order(u.order(), h.order(), p, o.power_cap);
    json r{{"base", to_json(u)}, {"template", to_json(h)}, {"p", p},
           {"order", tp.power.order()}, {"size", tp.power.size()},
           {"order_formula_holds", expected && *expected == tp.power.order()},
           {"alpha_is_homomorphism", check_homomorphism(tp.power, h, tp.alpha)},
           {"local_property_search", local.search_ok}, {"local_property_constructive", local.constructive_ok}};
    if (!o.graph_out.empty()) std::ofstream(o.graph_out) << to_graph6(tp.power) << "\n";
    results.push_back(r);
    verdict = local.ok() && r["order_formula_holds"].get<bool>();
  } else if (command == "dual-build" || command == "dual-verify") {
    const auto fam = forbidden();
    std::optional<DualBuild> built;
    Graph dual;
    if (command == "dual-verify" && !o.dual.empty()) {
      dual = read_graphs(o.dual, "").at(0);
    } else {
      built = build_dual(graphs, fam, dual_options(o));
      dual = built->dual();
      json prov = provenance_json(built->provenance);
      const auto local = power_local_property(built->power, hom);
      prov["local_property"] = local.ok();
      bool forb_u = true;
      for (const auto& f : fam) forb_u = forb_u && !find_homomorphism(f, built->power.base, hom).found();
      // F -/-> U together with the local property rules out F -> D without a search.
      prov["forbidden_excluded_by_construction"] = local.ok() && forb_u;
      summary["provenance"] = prov;
    }
    if (!o.graph_out.empty()) std::ofstream(o.graph_out) << to_graph6(dual) << "\n";
    summary["dual"] = to_json(dual);
    if (command == "dual-verify") {
      const auto rep = built ? verify_duality(graphs, fam, *built, hom) : verify_duality(graphs, fam, dual, hom);
      const auto body = duality_json(rep, graphs);
      results = body["corpus"];
      summary["forbidden_to_dual"] = body["forbidden_to_dual"];
      verdict = rep.pass;
    }
  } else if (command == "exact-power") {
    const std::size_t p = need(o.p, "--p");
    const PowerKind kind = o.kind == "distance" ? PowerKind::exact_distance : PowerKind::exact_path;
    if (o.kind != "path" && o.kind != "distance") throw Error("--kind must be path or distance");
    results = parallel_map(graphs, o.jobs, [&](const Graph& g) {
      const Graph pw = power(g, kind, p);
      return json{{"graph", to_json(g)}, {"power", to_json(pw)}, {"chromatic", to_json(chromatic_number(pw))}};
    });
  } else if (command == "experiment-odd-power") {
    const std::size_t p = need(o.p, "--p");
    std::optional<std::size_t> claim = o.claim;
    if (o.claim_from_dual) {
      const std::vector<Graph> fam{p == 1 ? graphs::complete(2) : graphs::cycle(p)};
      const auto built = build_dual(graphs, fam, dual_options(o));
      claim = built.dual().order();
      summary["dual_provenance"] = provenance_json(built.provenance);
    }
    const auto rep = odd_power_experiment(graphs, p, claim);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto& it = rep.items[i];
      json r{{"graph", to_json(graphs[i])}, {"odd_girth", odd_girth_json(it.odd_girth)}, {"skipped", it.skipped},
             {"max_degree", it.max_degree}, {"degree_bound", it.degree_bound}};
      if (it.chi_exact_power) r["chi_exact_power"] = to_json(*it.chi_exact_power);
      if (it.chi_exact_distance) r["chi_exact_distance"] = to_json(*it.chi_exact_distance);
      results.push_back(r);
    }
    summary["max_chi_exact_power"] = rep.max_chi_exact_power;
    summary["max_chi_exact_distance"] = rep.max_chi_exact_distance;
    summary["claim"] = claim ? json(*claim) : json(nullptr);
    summary["scope"] = "corpus-level maxima";
    verdict = rep.pass;
  } else if (command == "regular-partition") {
    const Graph& g = single();
    const std::size_t p = need(o.p, "--p");
    const auto c = parse_colors(o.colors, g.order());
    const auto reps = representatives(p, o.rep_order);
    const auto entries = regular_partition_report(g, c, p, reps);
    json rj = json::array();
    for (const auto& r : reps) rj.push_back(to_json(r));
    for (const auto& e : entries)
      results.push_back({{"classes", e.classes}, {"component", to_json(e.component)}, {"representative", e.representative}});
    summary["representatives"] = rj;
  } else {
    throw Error("unknown command '" + command + "'");
  }

  json report{{"schema", kSchema},
              {"command", command},
              {"parameters", params_json(command, o)},
              {"results", results},
              {"summary", summary},
              {"verdict", verdict ? (*verdict ? "pass" : "fail") : "n/a"},
              {"provenance",
               {{"version", kVersion},
                {"seed", o.seed},
                {"limits",
                 {{"node_budget", o.limit_nodes},
                  {"tree_depth", kTreeDepthLimit},
                  {"ball_families", kBallFamilyLimit},
                  {"core", kCoreLimit},
                  {"power_vertices", o.power_cap},
                  {"chromatic", kChromaticLimit}}}}}};
  if (o.timing)
    report["provenance"]["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {verdict.value_or(true) ? kPass : kFail, report.dump(2) + "\n"};
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"td",         "grad",          "orient",      "centered-verify",
                                              "lowtd-find", "power",         "dual-build",  "dual-verify",
                                              "exact-power", "experiment-odd-power", "regular-partition"};
  return names;
}

// Parses argv-style arguments (without the program name), runs the command and
// writes the report to --out when given. Never throws.
inline RunResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Structural sparsity and restricted duality toolkit", "sdtool"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--in", o.in, "input graph file (graph6 lines or edge list) or gen:<n>");
  app.add_option("--out", o.out, "write the JSON report here instead of stdout");
  app.add_option("--format", o.format, "input format")->check(CLI::IsMember({"g6", "edges"}));
  app.add_option("--p", o.p, "threshold / truncation / path length");
  app.add_option("--rank", o.rank, "grad rank r");
  app.add_option("--forbid", o.forbid, "graph6 file with the forbidden family");
  app.add_option("--limit-nodes", o.limit_nodes, "homomorphism search node budget (0 = unlimited)");
  app.add_option("--seed", o.seed, "seed recorded for randomised heuristics");
  app.add_option("--p-override", o.p_override, "truncation used by the dual pipeline");
  app.add_flag("--exhaustive", o.exhaustive, "demand exhaustive algorithms");
  app.add_option("--max-degree", o.max_degree, "corpus filter");
  app.add_option("--min-order", o.min_order, "corpus filter");
  app.add_flag("--connected", o.connected, "corpus filter");
  app.add_flag("--triangle-free", o.triangle_free, "corpus filter");
  app.add_option("--colors", o.colors, "comma-separated colouring");
  app.add_option("--k-max", o.k_max, "colour budget for lowtd-find");
  app.add_option("--template", o.templ, "template graph H for power");
  app.add_option("--complete", o.complete_template, "use K_n as the template graph for power");
  app.add_option("--dual", o.dual, "graph6 file with a candidate dual for dual-verify");
  app.add_option("--graph-out", o.graph_out, "write the constructed power / dual as graph6");
  app.add_option("--claim", o.claim, "colour bound asserted by experiment-odd-power");
  app.add_flag("--claim-from-dual", o.claim_from_dual, "take the claim from the dual for {C_p}");
  app.add_option("--kind", o.kind, "exact-power kind")->check(CLI::IsMember({"path", "distance"}));
  app.add_option("--rep-order", o.rep_order, "largest representative order");
  app.add_option("--power-cap", o.power_cap, "vertex cap for truncated powers");
  app.add_flag("--core-base", o.core_base, "reduce the dual's base graph to its core");
  app.add_option("--jobs", o.jobs, "worker threads for corpus items");
  app.add_flag("--timing", o.timing, "record wall time (breaks byte-identical output)");
  for (const auto& name : commands()) app.add_subcommand(name);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return {kError, std::string("error: ") + e.what() + "\n"};
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunResult r = execute(command, o);
    if (!o.out.empty()) {
      std::ofstream out(o.out, std::ios::binary);
      if (!out) throw Error("cannot write " + o.out);
      out << r.output;
    }
    return r;
  } catch (const std::exception& e) {
    return {kError, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace sd::cli
