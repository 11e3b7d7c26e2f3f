// Command-line front end: every subcommand is a thin wrapper over one library
// operation with file I/O. Exit codes: 0 all gates pass, 1 a mathematical
// gate failed (counterexample found), 2 usage or config error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "pbpsamp/adversary.hpp"
#include "pbpsamp/graph.hpp"
#include "pbpsamp/hit_program.hpp"
#include "pbpsamp/json_io.hpp"
#include "pbpsamp/report.hpp"
#include "pbpsamp/sampler.hpp"

namespace {

using namespace pbpsamp;

int cmd_gen_graph(std::uint32_t vertices, std::uint32_t d, std::uint64_t seed,
                  const std::string& out) {
  Rng rng = Rng(seed).substream("graph");
  const LabelledDigraph g = random_consistent_graph(vertices, d, rng);
  const Json j = graph_to_json(g);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(j, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_graph_to_bp(const std::string& graph_file, std::uint32_t u, std::uint32_t v,
                    std::uint32_t n, const std::string& out) {
  const LabelledDigraph g = graph_from_json(load_json_file(graph_file));
  const BranchingProgram b = graph_to_bp(g, u, v, n);
  const Json j = program_to_json(b);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(j, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_exact_prob(const std::string& program_file) {
  const BranchingProgram b = program_from_json(load_json_file(program_file));
  std::cout << accept_prob_exact(b).str() << "\n";
  return 0;
}

FamilySpec make_family(std::uint32_t n, std::uint32_t w, std::uint32_t d,
                       bool general, const std::string& endpoints) {
  FamilySpec family;
  family.n = n;
  family.w = w;
  family.d = d;
  family.permutation_only = !general;
  if (endpoints == "single") {
    family.endpoints = EndpointPolicy::all_single_accept();
  } else if (endpoints == "nonempty") {
    family.endpoints = EndpointPolicy::all_nonempty_accept();
  } else {
    throw std::invalid_argument("endpoints must be \"single\" or \"nonempty\"");
  }
  return family;
}

int cmd_build_hitter(const std::string& mode, std::uint32_t n, std::uint32_t w,
                     std::uint32_t d, bool general, const std::string& endpoints,
                     const std::string& eps_text, std::uint64_t size,
                     std::uint64_t seed, const std::string& out) {
  QuerySetMeta meta;
  meta.n = n;
  meta.d = d;
  QuerySet result;
  if (mode == "random") {
    Rng rng = Rng(seed).substream("hitter");
    const RandomQueryDraw draw = random_query_set(n, d, size, rng);
    result = draw.set;
    meta.kind = "random";
    meta.provenance = {{"seed", seed}, {"raw_draws", draw.raw_draws}};
  } else if (mode == "greedy") {
    const Rational eps = parse_fraction(eps_text);
    const FamilySpec family = make_family(n, w, d, general, endpoints);
    const HitterSearchResult search = minimal_hitter_search(family, eps);
    result = search.set;
    meta.kind = "greedy";
    meta.epsilon = eps_text;
    meta.provenance = {{"w", w},
                       {"permutation", !general},
                       {"endpoints", endpoints},
                       {"minimal_certified", search.minimal_certified}};
    std::cout << "minimal_certified=" << (search.minimal_certified ? 1 : 0) << "\n";
  } else {
    throw std::invalid_argument("mode must be \"greedy\" or \"random\"");
  }
  save_query_set(result, out, meta);
  std::cout << "wrote " << out << " (" << result.size() << " strings)\n";
  return 0;
}

int cmd_hit_program(const std::string& program_file, const std::string& hitter_file,
                    const std::string& out, const std::string& map_out) {
  const BranchingProgram b = program_from_json(load_json_file(program_file));
  const QuerySet h = load_query_set(hitter_file);
  const HitProgram hp = build_hit_program(b, h);
  std::cout << "width=" << hp.explicit_bp.width()
            << " bound=" << width_bound(h.size(), b.n, b.accept.size())
            << " padded_block=" << hp.padded_size << "\n";
  if (!out.empty()) {
    save_json_file(program_to_json(hp.explicit_bp), out);
    std::cout << "wrote " << out << "\n";
  }
  if (!map_out.empty()) {
    save_state_map_csv(hp, map_out);
    std::cout << "wrote " << map_out << "\n";
  }
  return 0;
}

int cmd_adversary(const std::string& kind, const std::string& hitter_file,
                  std::uint64_t accept_count, const std::string& eps_text,
                  const std::string& out) {
  const QuerySet h = load_query_set(hitter_file);
  std::optional<BranchingProgram> witness;
  Rational bound;
  Json provenance = {{"kind", kind}, {"hitter_hash", query_set_hash(h)}};
  if (kind == "parity") {
    auto found = parity_adversary(h);
    if (found) {
      witness = std::move(found->program);
      provenance["z"] = found->z;
    }
    bound = Rational(1, 2);
  } else if (kind == "prefix") {
    if (eps_text.empty()) throw std::invalid_argument("prefix adversary needs --eps");
    const Rational eps = parse_fraction(eps_text);
    witness = prefix_adversary(h, accept_count, eps);
    bound = 2 * eps;
    provenance["a"] = accept_count;
    provenance["epsilon"] = eps_text;
  } else if (kind == "prefix-match") {
    if (eps_text.empty()) throw std::invalid_argument("prefix-match adversary needs --eps");
    const Rational eps = parse_fraction(eps_text);
    witness = prefix_match_adversary(h, eps);
    bound = 2 * eps;
    provenance["epsilon"] = eps_text;
  } else {
    throw std::invalid_argument("adversary kind must be parity, prefix, or prefix-match");
  }
  if (!witness) {
    std::cout << "none (no " << kind << " witness against this set)\n";
    return 0;
  }
  const WitnessReport report = witness_verify(*witness, h, bound);
  std::cout << "witness width=" << report.width
            << " permutation=" << (report.is_permutation ? 1 : 0)
            << " prob=" << to_fraction_string(report.prob)
            << " bound=" << to_fraction_string(report.bound)
            << " rejects_all=" << (report.rejects_all ? 1 : 0)
            << " verified=" << (report.ok ? 1 : 0) << "\n";
  Json j = program_to_json(*witness);
  j["provenance"] = provenance;
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(j, out);
    std::cout << "wrote " << out << "\n";
  }
  return 1;  // a counterexample to the hitter was found and verified
}

int cmd_verify(const std::string& kind, const std::string& set_file, std::uint32_t w,
               bool general, const std::string& endpoints, const std::string& eps_text,
               std::uint64_t budget, std::uint64_t sample_seed,
               const std::string& out) {
  const QuerySet q = load_query_set(set_file);
  const Rational eps = parse_fraction(eps_text);
  const FamilySpec family = make_family(q.n, w, q.d, general, endpoints);
  VerifyOptions options;
  options.budget = budget;
  options.sample_seed = sample_seed;
  VerifyVerdict verdict;
  if (kind == "sampler") {
    verdict = verify_sampler(q, family, eps, options);
  } else if (kind == "hitter") {
    verdict = verify_hitter(q, family, eps, options);
  } else {
    throw std::invalid_argument("verify kind must be \"sampler\" or \"hitter\"");
  }
  std::cout << (verdict.ok ? "ok" : "counterexample")
            << " mode=" << (verdict.exhaustive ? "exhaustive" : "sampled")
            << " checked=" << verdict.checked
            << " family=" << verdict.family_total.str() << "\n";
  if (verdict.counterexample && !out.empty()) {
    save_json_file(program_to_json(*verdict.counterexample), out);
    std::cout << "wrote " << out << "\n";
  }
  return verdict.ok ? 0 : 1;
}

int cmd_sample(const std::string& config_file, const std::string& scenario,
               const std::string& out_dir, bool ndjson) {
  Json config;
  if (!scenario.empty()) {
    config = bundled_scenario(scenario);
  } else if (!config_file.empty()) {
    config = load_json_file(config_file);
  } else {
    throw std::invalid_argument("sample needs --config or --scenario");
  }
  const std::string run_id = "run-" + fnv1a_hex(config.dump());
  std::string base = run_id;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    base = out_dir + "/" + run_id;
  }

  std::ostringstream stream_buffer;
  InstanceSink sink;
  if (ndjson) {
    sink = [&stream_buffer](const Json& row) {
      stream_buffer << row.dump() << "\n";
    };
  }
  const ExperimentReport report = run_scenario(config, sink);
  save_json_file(report_to_json(report), base + ".json");
  write_text_file(base + ".csv", report_to_csv(report));
  if (ndjson) write_text_file(base + ".ndjson", stream_buffer.str());

  for (const GateRow& gate : report.gates) {
    std::cout << (gate.pass ? "PASS " : "FAIL ") << gate.name << " (" << gate.detail
              << ")\n";
  }
  if (!report.instances.empty()) {
    std::cout << "instances=" << report.instances.size()
              << " max_abs_error=" << to_fraction_string(report.max_error)
              << " epsilon=" << to_fraction_string(report.epsilon) << "\n";
  }
  std::cout << (report.all_pass ? "PASS" : "FAIL") << " " << run_id << "\n";
  std::cout << "wrote " << base << ".json, " << base << ".csv"
            << (ndjson ? ", " + base + ".ndjson" : "") << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_report(const std::string& in_file, const std::string& csv_out) {
  const Json j = load_json_file(in_file);
  if (!j.contains("run_id") || !j.contains("instances") || !j.contains("gates")) {
    throw std::invalid_argument(in_file + " is not an experiment report");
  }
  const std::string run_id = j.at("run_id").get<std::string>();
  std::ostringstream out;
  if (!j.at("gates").empty()) {
    out << "run_id,gate,pass,detail\n";
    for (const Json& gate : j.at("gates")) {
      std::string detail = gate.at("detail").get<std::string>();
      std::replace(detail.begin(), detail.end(), ',', ';');
      out << run_id << ',' << gate.at("name").get<std::string>() << ','
          << (gate.at("pass").get<bool>() ? 1 : 0) << ',' << detail << '\n';
    }
  } else {
    out << "run_id,index,target,n,a,epsilon,exact,estimate,abs_error,abs_error_dec,"
           "base_distinct,query_bound,inner_distinct,inner_width,hitter_raw,"
           "hitter_distinct,gate_hitter,gate_inner,gate_plan,pass\n";
    const std::string epsilon = j.at("epsilon").get<std::string>();
    for (const Json& row : j.at("instances")) {
      out << run_id << ',' << row.at("index").get<std::uint64_t>() << ','
          << row.at("target").get<std::string>() << ','
          << row.at("n").get<std::uint32_t>() << ',' << row.at("a").get<std::uint64_t>()
          << ',' << epsilon << ',' << row.at("exact").get<std::string>() << ','
          << row.at("estimate").get<std::string>() << ','
          << row.at("abs_error").get<std::string>() << ','
          << row.at("abs_error_dec").get<std::string>() << ','
          << row.at("base_distinct").get<std::uint64_t>() << ','
          << row.at("query_bound").get<std::uint64_t>() << ','
          << row.at("inner_distinct").get<std::uint64_t>() << ','
          << row.at("inner_width").get<std::uint64_t>() << ','
          << row.at("hitter_raw").get<std::uint64_t>() << ','
          << row.at("hitter_distinct").get<std::uint64_t>() << ','
          << (row.at("gate_hitter").get<bool>() ? 1 : 0) << ','
          << (row.at("gate_inner").get<bool>() ? 1 : 0) << ','
          << (row.at("gate_plan").get<bool>() ? 1 : 0) << ','
          << (row.at("pass").get<bool>() ? 1 : 0) << '\n';
    }
  }
  if (csv_out.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(csv_out, out.str());
    std::cout << "wrote " << csv_out << "\n";
  }
  const Json aggregate = j.value("aggregate", Json::object());
  if (aggregate.contains("all_pass")) {
    std::cout << (aggregate.at("all_pass").get<bool>() ? "PASS" : "FAIL") << " "
              << run_id << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic samplers, hitters, and width reduction for "
               "permutation branching programs"};
  app.require_subcommand(1);

  // gen-graph
  std::uint32_t gg_vertices = 8, gg_d = 2;
  std::uint64_t gg_seed = 0;
  std::string gg_out;
  auto* gen_graph = app.add_subcommand("gen-graph", "random consistently-labelled graph");
  gen_graph->add_option("--vertices", gg_vertices, "vertex count")->required();
  gen_graph->add_option("--d", gg_d, "degree / alphabet size");
  gen_graph->add_option("--seed", gg_seed, "random seed");
  gen_graph->add_option("--out", gg_out, "output graph JSON path");

  // graph-to-bp
  std::string g2b_graph, g2b_out;
  std::uint32_t g2b_u = 0, g2b_v = 0, g2b_n = 1;
  auto* g2b = app.add_subcommand("graph-to-bp", "walk simulator as a branching program");
  g2b->add_option("--graph", g2b_graph, "input graph JSON")->required();
  g2b->add_option("--u", g2b_u, "start vertex")->required();
  g2b->add_option("--v", g2b_v, "end vertex")->required();
  g2b->add_option("--n", g2b_n, "walk length")->required();
  g2b->add_option("--out", g2b_out, "output program JSON path");

  // exact-prob
  std::string ep_program;
  auto* exact = app.add_subcommand("exact-prob", "exact acceptance probability");
  exact->add_option("program", ep_program, "program JSON file")->required();

  // build-hitter
  std::string bh_mode = "greedy", bh_eps, bh_out, bh_endpoints = "single";
  std::uint32_t bh_n = 4, bh_w = 2, bh_d = 2;
  std::uint64_t bh_size = 64, bh_seed = 0;
  bool bh_general = false;
  auto* build_hitter = app.add_subcommand("build-hitter", "greedy or random hitting set");
  build_hitter->add_option("--mode", bh_mode, "greedy | random");
  build_hitter->add_option("--n", bh_n, "word length")->required();
  build_hitter->add_option("--w", bh_w, "family width (greedy)");
  build_hitter->add_option("--d", bh_d, "alphabet size");
  build_hitter->add_option("--eps", bh_eps, "threshold p/q (greedy)");
  build_hitter->add_option("--size", bh_size, "draw count (random)");
  build_hitter->add_option("--seed", bh_seed, "random seed");
  build_hitter->add_flag("--general", bh_general, "general programs, not permutation");
  build_hitter->add_option("--endpoints", bh_endpoints, "single | nonempty");
  build_hitter->add_option("--out", bh_out, "output query-set path")->required();

  // hit-program
  std::string hp_program, hp_hitter, hp_out, hp_map;
  auto* hit_program = app.add_subcommand("hit-program", "build the induced hit program");
  hit_program->add_option("--program", hp_program, "program JSON")->required();
  hit_program->add_option("--hitter", hp_hitter, "hitter query-set file")->required();
  hit_program->add_option("--out", hp_out, "output program JSON");
  hit_program->add_option("--map", hp_map, "state-map CSV output");

  // adversary
  std::string adv_kind, adv_hitter, adv_eps, adv_out;
  std::uint64_t adv_a = 1;
  auto* adversary = app.add_subcommand("adversary", "lower-bound witness against a hitter");
  adversary->add_option("kind", adv_kind, "parity | prefix | prefix-match")->required();
  adversary->add_option("--hitter", adv_hitter, "hitter query-set file")->required();
  adversary->add_option("--a", adv_a, "accept-state count (prefix)");
  adversary->add_option("--eps", adv_eps, "epsilon p/q (prefix kinds)");
  adversary->add_option("--out", adv_out, "witness program JSON output");

  // verify
  std::string vf_kind, vf_set, vf_eps, vf_endpoints = "nonempty", vf_out;
  std::uint32_t vf_w = 2;
  std::uint64_t vf_budget = 0, vf_sample_seed = 0;
  bool vf_general = false;
  auto* verify = app.add_subcommand("verify", "verify a sampler or hitter against a family");
  verify->add_option("kind", vf_kind, "sampler | hitter")->required();
  verify->add_option("--set", vf_set, "query-set file")->required();
  verify->add_option("--w", vf_w, "family width")->required();
  verify->add_option("--eps", vf_eps, "error bound p/q")->required();
  verify->add_flag("--general", vf_general, "general programs, not permutation");
  verify->add_option("--endpoints", vf_endpoints, "single | nonempty");
  verify->add_option("--budget", vf_budget, "enumeration budget override");
  verify->add_option("--sample-seed", vf_sample_seed, "seed for sampled fallback");
  verify->add_option("--out", vf_out, "counterexample program output");

  // sample
  std::string sm_config, sm_scenario, sm_out_dir = ".";
  bool sm_ndjson = false;
  auto* sample = app.add_subcommand("sample", "run a sampling scenario end to end");
  sample->add_option("--config", sm_config, "scenario config JSON");
  sample->add_option("--scenario", sm_scenario, "bundled scenario name");
  sample->add_option("--out-dir", sm_out_dir, "output directory");
  sample->add_flag("--ndjson", sm_ndjson, "also stream instances as NDJSON");

  // report
  std::string rp_in, rp_csv;
  auto* report = app.add_subcommand("report", "re-emit CSV from a report JSON");
  report->add_option("--in", rp_in, "report JSON file")->required();
  report->add_option("--csv", rp_csv, "CSV output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_graph->parsed()) return cmd_gen_graph(gg_vertices, gg_d, gg_seed, gg_out);
    if (g2b->parsed()) return cmd_graph_to_bp(g2b_graph, g2b_u, g2b_v, g2b_n, g2b_out);
    if (exact->parsed()) return cmd_exact_prob(ep_program);
    if (build_hitter->parsed()) {
      return cmd_build_hitter(bh_mode, bh_n, bh_w, bh_d, bh_general, bh_endpoints,
                              bh_eps, bh_size, bh_seed, bh_out);
    }
    if (hit_program->parsed()) return cmd_hit_program(hp_program, hp_hitter, hp_out, hp_map);
    if (adversary->parsed()) {
      return cmd_adversary(adv_kind, adv_hitter, adv_a, adv_eps, adv_out);
    }
    if (verify->parsed()) {
      return cmd_verify(vf_kind, vf_set, vf_w, vf_general, vf_endpoints, vf_eps,
                        vf_budget, vf_sample_seed, vf_out);
    }
    if (sample->parsed()) return cmd_sample(sm_config, sm_scenario, sm_out_dir, sm_ndjson);
    if (report->parsed()) return cmd_report(rp_in, rp_csv);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
