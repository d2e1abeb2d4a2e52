// Command line front-end: generate | gap | decompose | verify | embed | report.
// Every artifact is a JSON file; numeric parameters are exact rationals like
// "1/4". Identical config and seed give byte-identical outputs.

#include "sparsedecomp/decomposition.hpp"
#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/json_io.hpp"
#include "sparsedecomp/tree_embed.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace sparsedecomp;

namespace {

bool verbose() { return std::getenv("SPARSEDECOMP_LOG") != nullptr; }

void log_line(const std::string& s) {
  if (verbose()) std::cerr << "[sparsedecomp] " << s << "\n";
}

Rat jrat(const Json& j, const char* key) { return rational_from_json(j.at(key)); }

Graph generate_from_spec(const Json& spec) {
  std::string kind = spec.at("kind").get<std::string>();
  std::uint64_t seed = spec.value("seed", 1ULL);
  if (kind == "lks_extremal") return lks_extremal(spec.at("n").get<int>());
  if (kind == "es_extremal")
    return es_extremal(spec.at("n").get<int>(), spec.at("k").get<int>());
  if (kind == "biclique") {
    int a = spec.at("a").get<int>(), b = spec.at("b").get<int>();
    std::vector<Edge> es;
    for (int u = 0; u < a; ++u)
      for (int w = a; w < a + b; ++w) es.push_back({u, w});
    return Graph::from_edges(a + b, std::move(es));
  }
  if (kind == "complete") {
    int n = spec.at("n").get<int>();
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) es.push_back({u, v});
    return Graph::from_edges(n, std::move(es));
  }
  if (kind == "random_gnp")
    return random_graph_gnp(spec.at("n").get<int>(), jrat(spec, "p"), seed);
  if (kind == "random_gnm")
    return random_graph_gnm(spec.at("n").get<int>(), spec.at("m").get<long long>(), seed);
  if (kind == "regular")
    return regular_graph(spec.at("n").get<int>(), spec.at("d").get<int>(), seed);
  if (kind == "near_regular")
    return near_regular_graph(spec.at("n").get<int>(), spec.at("d").get<int>(), seed);
  if (kind == "union") {
    std::vector<Graph> parts;
    for (const auto& part : spec.at("parts")) parts.push_back(generate_from_spec(part));
    return disjoint_union(parts);
  }
  throw std::invalid_argument("unknown generator kind: " + kind);
}

OmegaSequence omegas_from_json(const Json& j) {
  if (j.contains("values")) {
    std::vector<Rat> vals;
    for (const auto& v : j.at("values")) vals.push_back(rational_from_json(v));
    return OmegaSequence::from_values(std::move(vals));
  }
  return OmegaSequence(jrat(j, "omega1"), jrat(j, "ratio"), j.at("count").get<long long>());
}

Partition partition_from_json(const Json& j) {
  Partition p;
  for (const auto& b : j) p.blocks.push_back(vertex_set_from_json(b));
  return p;
}

int cmd_generate(const std::string& config_path, const std::string& output,
                 long long seed_override) {
  Json spec = load_json_file(config_path);
  if (seed_override >= 0) spec["seed"] = static_cast<std::uint64_t>(seed_override);
  if (spec.at("kind").get<std::string>() == "locally_dense") {
    auto inst = locally_dense(spec.at("ell").get<int>(), spec.at("set_size").get<int>(),
                              spec.at("pattern_maxdeg").get<int>(), jrat(spec, "density"),
                              spec.value("seed", 1ULL));
    Json out;
    out["graph"] = graph_to_json(inst.host);
    out["pattern"] = graph_to_json(inst.pattern);
    Json ens = Json::array();
    for (const auto& w : inst.ensemble) ens.push_back(vertex_set_to_json(w));
    out["ensemble"] = std::move(ens);
    write_json_file(output, out);
    return 0;
  }
  Graph g = generate_from_spec(spec);
  log_line("generated graph with " + std::to_string(g.n()) + " vertices, " +
           std::to_string(g.e()) + " edges");
  write_json_file(output, graph_to_json(g));
  return 0;
}

int cmd_gap(const std::string& mode, const std::string& input, const std::string& output,
            long long k, const std::string& eta_s, const std::string& omega1_s,
            const std::string& ratio_s, long long count) {
  Graph g = graph_from_json(load_json_file(input));
  Rat eta = parse_rational(eta_s);
  OmegaSequence omegas(parse_rational(omega1_s), parse_rational(ratio_s), count);
  GapResult res = mode == "lks" ? create_gap_lks(g, LksParams{k, eta}, omegas)
                                : create_gap_generic(g, k, eta, omegas);
  Json out;
  out["mode"] = mode;
  out["star_index"] = res.star_index;
  out["subgraph"] = graph_to_json(res.subgraph);
  Json removed = Json::array();
  for (const auto& [u, v] : res.removed_edges) removed.push_back(Json::array({u, v}));
  out["removed_edges"] = std::move(removed);
  write_json_file(output, out);
  return 0;
}

int cmd_decompose(const std::string& config_path, const std::string& input,
                  const std::string& output, const std::string& report_path,
                  long long seed_override, int exact_cap_override) {
  Json cfg = load_json_file(config_path);
  Graph g = graph_from_json(load_json_file(input));
  std::string mode = cfg.value("mode", std::string("bounded"));
  DecompParams params = DecompParams::from_json(cfg.at("params"));
  if (seed_override >= 0) params.finder.seed = static_cast<std::uint64_t>(seed_override);
  if (exact_cap_override >= 0) params.finder.exact_cap = exact_cap_override;

  Json out;
  DecomposeReport rep;
  if (mode == "bounded") {
    Partition pre;
    if (cfg.contains("prepartition")) pre = partition_from_json(cfg.at("prepartition"));
    else {
      VertexSet all;
      for (int v = 0; v < g.n(); ++v) all.push_back(v);
      pre.blocks = {all};
    }
    auto d = decompose_bounded(g, pre, params, &rep);
    out["huge"] = Json::array();
    Json bj = d.to_json();
    for (auto& [key, val] : bj.items()) out[key] = std::move(val);
    out["star_index"] = nullptr;
    out["host"] = graph_to_json(g);
  } else {
    OmegaSequence omegas = omegas_from_json(cfg.at("omega"));
    SparseOutcome outcome =
        mode == "lks"
            ? decompose_sparse_lks(
                  g, LksParams{params.k, jrat(cfg.at("lks"), "eta")}, omegas, params)
            : decompose_generic(g, jrat(cfg, "eta"), omegas, params);
    rep = outcome.report;
    Json bj = outcome.decomposition.to_json();
    for (auto& [key, val] : bj.items()) out[key] = std::move(val);
    out["star_index"] = outcome.star_index;
    out["host"] = graph_to_json(outcome.cleaned);
    params = outcome.params; // the gap fixes Omega* and Omega**
  }
  out["params"] = params.to_json();
  out["mode"] = mode;
  write_json_file(output, out);
  if (!report_path.empty()) write_json_file(report_path, rep.to_json());
  return 0;
}

int cmd_verify(const std::string& input, const std::string& graph_path,
               const std::string& output, int random_challenges, std::uint64_t seed,
               int exact_cap_override) {
  Json dj = load_json_file(input);
  Graph host = graph_path.empty() ? graph_from_json(dj.at("host"))
                                  : graph_from_json(load_json_file(graph_path));
  DecompParams params = DecompParams::from_json(dj.at("params"));
  if (exact_cap_override >= 0) params.finder.exact_cap = exact_cap_override;
  SparseDecomposition s = SparseDecomposition::from_json(dj);
  auto challenges =
      builtin_challenges(host.minus_vertices(s.huge), s.bounded, params, random_challenges, seed);
  ClauseReport rep = verify_sparse(host, s, params, challenges);
  Json out = rep.to_json();
  out["challenges"] = challenges.size();
  write_json_file(output, out);
  log_line(std::string("verify: ") + (rep.all_pass() ? "all clauses pass" : "FAILURES"));
  return 0;
}

RootedTree tree_from_config(const Json& j) {
  if (j.is_object() && j.contains("kind")) {
    std::string kind = j.at("kind").get<std::string>();
    int k = j.at("k").get<int>();
    if (kind == "path") return RootedTree::path(k);
    if (kind == "star") return RootedTree::star(k);
    if (kind == "binary") return RootedTree::complete_binary(k);
    throw std::invalid_argument("unknown tree kind: " + kind);
  }
  return tree_from_json(j);
}

int cmd_embed(const std::string& config_path, const std::string& input,
              const std::string& output, long long seed_override) {
  Json cfg = load_json_file(config_path);
  if (seed_override >= 0) cfg["seed"] = static_cast<std::uint64_t>(seed_override);
  Graph host = graph_from_json(load_json_file(input));
  std::string mode = cfg.at("mode").get<std::string>();
  Json out;
  out["mode"] = mode;
  std::optional<Embedding> e;
  if (mode == "greedy") {
    RootedTree t = tree_from_config(cfg.at("tree"));
    e = greedy_embed(t, host);
  } else if (mode == "path") {
    FinderConfig finder;
    finder.seed = cfg.value("finder_seed", 1ULL);
    if (cfg.contains("exact_cap")) finder.exact_cap = cfg.at("exact_cap").get<int>();
    if (cfg.contains("ladder_steps")) finder.ladder_steps = cfg.at("ladder_steps").get<int>();
    if (cfg.contains("random_restarts"))
      finder.random_restarts = cfg.at("random_restarts").get<int>();
    PathEmbedStats stats;
    e = embed_path_expander(cfg.at("k").get<long long>(), host, jrat(cfg, "gamma"),
                            jrat(cfg, "rho"), cfg.value("seed", 1ULL), finder, &stats);
    out["lookahead_ok"] = stats.lookahead_ok;
    out["max_disqualified"] = stats.max_disqualified;
  } else if (mode == "shrub") {
    RootedTree t = tree_from_config(cfg.at("tree"));
    SpotFamily fam = SpotFamily::from_json(cfg.at("spots"));
    AvoidingEmbedParams params{jrat(cfg, "tau"), jrat(cfg, "gamma"), jrat(cfg, "eps"),
                               cfg.at("k").get<long long>()};
    e = embed_shrub_avoiding(t, host, fam, vertex_set_from_json(cfg.at("avoiding")),
                             cfg.at("anchor").get<int>(),
                             vertex_set_from_json(cfg.at("used")), params);
  } else if (mode == "reserve") {
    RootedTree t = tree_from_config(cfg.at("tree"));
    ReserveEmbedParams params;
    params.q_levels = cfg.value("q_levels", 2);
    params.rho = jrat(cfg, "rho");
    params.delta = jrat(cfg, "delta");
    params.seed = cfg.value("seed", 1ULL);
    if (cfg.contains("retries")) params.retries = cfg.at("retries").get<long long>();
    ReserveEmbedTrace trace;
    e = embed_tree_reserve(t, host, vertex_set_from_json(cfg.at("seeds")), params, &trace);
    out["attempts"] = trace.attempts;
    out["margins_ok"] = trace.margins_ok;
  } else {
    throw std::invalid_argument("unknown embed mode: " + mode);
  }
  out["success"] = e.has_value();
  if (e) {
    Json ej = e->to_json();
    out["map"] = std::move(ej.at("map"));
    out["reserve"] = std::move(ej.at("reserve"));
  }
  write_json_file(output, out);
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& output) {
  Json out;
  Json files = Json::array();
  long long pass = 0, fail = 0;
  for (const auto& path : inputs) {
    Json j = load_json_file(path);
    bool ok = true;
    if (j.contains("all_pass")) ok = j.at("all_pass").get<bool>();
    else if (j.contains("success")) ok = j.at("success").get<bool>();
    (ok ? pass : fail) += 1;
    files.push_back(Json{{"file", path}, {"pass", ok}});
  }
  out["files"] = std::move(files);
  out["pass"] = pass;
  out["fail"] = fail;
  write_json_file(output, out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse graph decomposition toolkit"};
  app.require_subcommand(1);

  std::string config, input, output, report_path, graph_path, mode = "generic";
  std::vector<std::string> inputs;
  long long k = 1, omega_count = 10;
  std::string eta = "1/4", omega1 = "5/2", omega_ratio = "1/1600";
  int random_challenges = 20;
  std::uint64_t seed = 1;
  long long seed_override = -1;
  int jobs = 1;
  int exact_cap = -1;

  auto* gen = app.add_subcommand("generate", "write a generated graph as JSON");
  gen->add_option("--config", config)->required();
  gen->add_option("--output", output)->required();

  auto* gap = app.add_subcommand("gap", "create a degree-sequence gap");
  gap->add_option("--mode", mode)->check(CLI::IsMember({"generic", "lks"}));
  gap->add_option("--input", input)->required();
  gap->add_option("--output", output)->required();
  gap->add_option("--k", k)->required();
  gap->add_option("--eta", eta);
  gap->add_option("--omega1", omega1);
  gap->add_option("--omega-ratio", omega_ratio);
  gap->add_option("--omega-count", omega_count);

  auto* dec = app.add_subcommand("decompose", "run a decomposition pipeline");
  dec->add_option("--config", config)->required();
  dec->add_option("--input", input)->required();
  dec->add_option("--output", output)->required();
  dec->add_option("--report", report_path);

  auto* ver = app.add_subcommand("verify", "check every defining clause");
  ver->add_option("--input", input)->required();
  ver->add_option("--graph", graph_path);
  ver->add_option("--output", output)->required();
  ver->add_option("--challenges", random_challenges);
  ver->add_option("--seed", seed);

  auto* emb = app.add_subcommand("embed", "run a tree-embedding procedure");
  emb->add_option("--config", config)->required();
  emb->add_option("--input", input)->required();
  emb->add_option("--output", output)->required();

  auto* repc = app.add_subcommand("report", "aggregate result files");
  repc->add_option("--inputs", inputs)->required()->expected(-1);
  repc->add_option("--output", output)->required();

  for (auto* sub : {gen, gap, dec, ver, emb, repc}) {
    sub->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    sub->add_option("--exact-cap", exact_cap);
  }
  for (auto* sub : {gen, dec, emb})
    sub->add_option("--seed", seed_override, "override the config seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(config, output, seed_override);
    if (gap->parsed()) return cmd_gap(mode, input, output, k, eta, omega1, omega_ratio, omega_count);
    if (dec->parsed()) return cmd_decompose(config, input, output, report_path, seed_override, exact_cap);
    if (ver->parsed()) return cmd_verify(input, graph_path, output, random_challenges, seed, exact_cap);
    if (emb->parsed()) return cmd_embed(config, input, output, seed_override);
    if (repc->parsed()) return cmd_report(inputs, output);
  } catch (const std::exception& ex) {
    Json err;
    err["error"] = Json{{"message", ex.what()}};
    std::cerr << dump_json(err);
    return 2;
  }
  return 1;
}
