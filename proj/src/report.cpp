#include "pbpsamp/report.hpp"

#include <algorithm>
#include <sstream>

#include "pbpsamp/adversary.hpp"
#include "pbpsamp/graph.hpp"

namespace pbpsamp {

// ---------------------------------------------------------------------------
// Config plumbing.
// ---------------------------------------------------------------------------

namespace {

std::uint64_t get_u64(const Json& j, const char* key, std::optional<std::uint64_t> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("config: missing field \"") + key + "\"");
  }
  const Json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    throw std::invalid_argument(std::string("config: field \"") + key +
                                "\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const Json& j, const char* key, std::optional<std::uint32_t> fallback = {}) {
  return static_cast<std::uint32_t>(
      get_u64(j, key, fallback ? std::optional<std::uint64_t>(*fallback) : std::nullopt));
}

std::string get_string(const Json& j, const char* key,
                       std::optional<std::string> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("config: missing field \"") + key + "\"");
  }
  if (!j.at(key).is_string()) {
    throw std::invalid_argument(std::string("config: field \"") + key +
                                "\" must be a string");
  }
  return j.at(key).get<std::string>();
}

bool get_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) {
    throw std::invalid_argument(std::string("config: field \"") + key +
                                "\" must be a boolean");
  }
  return j.at(key).get<bool>();
}

Rational get_rational(const Json& j, const char* key,
                      std::optional<std::string> fallback = {}) {
  const std::string text = get_string(j, key, fallback);
  return parse_fraction(text);
}

LabelledDigraph make_cycle_graph(std::uint32_t vertices) {
  if (vertices == 0) throw std::invalid_argument("cycle needs vertices >= 1");
  LabelledDigraph g;
  g.vertices = vertices;
  g.d = 2;
  g.perm.assign(2, std::vector<std::uint32_t>(vertices));
  for (std::uint32_t v = 0; v < vertices; ++v) {
    g.perm[0][v] = (v + 1) % vertices;
    g.perm[1][v] = (v + vertices - 1) % vertices;
  }
  return g;
}

struct TargetInstance {
  BranchingProgram program;
  std::string description;
};

TargetInstance build_target(const Json& target, std::uint32_t n, Rng& rng) {
  const std::string kind = get_string(target, "kind");
  if (kind == "cycle") {
    const std::uint32_t vertices = get_u32(target, "vertices", 4);
    const std::uint32_t u = get_u32(target, "u", 0);
    const std::uint32_t v = get_u32(target, "v", 0);
    return {graph_to_bp(make_cycle_graph(vertices), u, v, n),
            "cycle" + std::to_string(vertices) + "(u=" + std::to_string(u) +
                ";v=" + std::to_string(v) + ";n=" + std::to_string(n) + ")"};
  }
  if (kind == "random_graph") {
    const std::uint32_t vertices = get_u32(target, "vertices", 16);
    Rng graph_rng = rng.substream("graph");
    LabelledDigraph g = random_consistent_graph(vertices, 2, graph_rng);
    const auto u = static_cast<std::uint32_t>(graph_rng.below(vertices));
    const auto v = static_cast<std::uint32_t>(graph_rng.below(vertices));
    return {graph_to_bp(g, u, v, n),
            "graph(|V|=" + std::to_string(vertices) + ";u=" + std::to_string(u) +
                ";v=" + std::to_string(v) + ";n=" + std::to_string(n) + ")"};
  }
  if (kind == "graph_file") {
    const std::string file = get_string(target, "file");
    const LabelledDigraph g = graph_from_json(load_json_file(file));
    const std::uint32_t u = get_u32(target, "u");
    const std::uint32_t v = get_u32(target, "v");
    return {graph_to_bp(g, u, v, n), "graph_file(" + file + ")"};
  }
  if (kind == "bp_file") {
    const std::string file = get_string(target, "file");
    BranchingProgram b = program_from_json(load_json_file(file));
    if (b.n != n) {
      throw std::invalid_argument("program length in " + file +
                                  " does not match config n");
    }
    return {std::move(b), "bp_file(" + file + ")"};
  }
  throw std::invalid_argument("config: unknown target kind \"" + kind + "\"");
}

struct HitterAcquisition {
  QuerySet set;
  std::uint64_t raw_draws = 0;
};

HitterAcquisition acquire_hitter(const BranchingProgram& b,
                                 const ParameterSchedule& schedule,
                                 const Json& hitter_cfg, Rng& rng) {
  const std::string kind = get_string(hitter_cfg, "kind");
  if (kind == "full_cube") {
    if (word_space_size(schedule.n, b.d) == 0 ||
        word_space_size(schedule.n, b.d) > enumeration_budget()) {
      throw BudgetExceeded(boost::multiprecision::pow(BigInt(b.d), schedule.n));
    }
    QuerySet q = QuerySet::full_cube(schedule.n, b.d);
    const std::uint64_t size = q.size();
    return {std::move(q), size};
  }
  if (kind == "file") {
    QuerySet q = load_query_set(get_string(hitter_cfg, "file"));
    const std::uint64_t size = q.size();
    return {std::move(q), size};
  }
  if (kind == "random") {
    std::uint64_t size = get_u64(hitter_cfg, "size", std::uint64_t{64});
    const bool grow = get_bool(hitter_cfg, "grow", true);
    const std::uint64_t max_size = get_u64(hitter_cfg, "max_size", std::uint64_t{8192});
    const Rational threshold = schedule.hitter_gate_threshold();
    while (true) {
      RandomQueryDraw draw = random_query_set(schedule.n, b.d, size, rng);
      if (!grow || hitter_covers_program(b, draw.set, threshold).ok ||
          size >= max_size) {
        return {std::move(draw.set), size};
      }
      size = std::min(size * 2, max_size);
    }
  }
  throw std::invalid_argument("config: unknown hitter kind \"" + kind + "\"");
}

InnerSamplerFactory make_inner_factory(const Json& inner_cfg, std::uint64_t seed) {
  const std::string kind = get_string(inner_cfg, "kind");
  if (kind == "full_cube") return full_cube_factory();
  if (kind == "random_averaging") {
    return random_averaging_factory(seed, get_u64(inner_cfg, "size", std::uint64_t{0}));
  }
  if (kind == "plan_file") {
    return fixed_plan_factory(load_query_set(get_string(inner_cfg, "file")));
  }
  throw std::invalid_argument("config: unknown inner sampler kind \"" + kind + "\"");
}

InstanceRow run_instance(std::uint64_t index, const BranchingProgram& b,
                         std::string target_desc, const ParameterSchedule& schedule,
                         const Json& inner_cfg, const Json& hitter_cfg,
                         const Rng& inst_rng) {
  if (!check_permutation(b).is_permutation) {
    throw std::invalid_argument("target must be a permutation program");
  }
  InstanceRow row;
  row.index = index;
  row.target = std::move(target_desc);
  row.n = schedule.n;
  row.a = schedule.a;
  row.exact = accept_prob_exact(b).to_rational();

  Rng hitter_rng = inst_rng.substream("hitter");
  HitterAcquisition hitter = acquire_hitter(b, schedule, hitter_cfg, hitter_rng);
  row.hitter_raw = hitter.raw_draws;
  row.hitter_distinct = hitter.set.size();
  row.gate_hitter =
      hitter_covers_program(b, hitter.set, schedule.hitter_gate_threshold()).ok;

  Rng inner_rng = inst_rng.substream("inner-sampler");
  const InnerSamplerFactory factory = make_inner_factory(inner_cfg, inner_rng.next());

  OracleSession session = OracleSession::over_program(b);
  const SampleRun run = unbounded_sampler(
      session, schedule, factory,
      [&](const ParameterSchedule&) { return hitter.set; });

  row.estimate = run.estimate;
  row.abs_error = rational_abs(run.estimate - row.exact);
  row.base_distinct = run.base_distinct;
  row.query_bound = run.accounting_bound;
  row.inner_distinct = run.inner_distinct;
  row.inner_width = run.inner_width;
  row.gate_plan = run.plan_preregistered;

  const HitProgram hp = build_hit_program(b, hitter.set);
  const Rational restricted = accept_prob_exact(hp.explicit_bp).to_rational();
  row.gate_inner =
      rational_abs(run.raw_estimate - restricted) <= schedule.epsilon_inner;

  row.pass = row.gate_hitter && row.gate_inner && row.gate_plan &&
             row.abs_error <= schedule.epsilon;
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lemma-suite gates: the module invariants at desk scale, one row per gate.
// ---------------------------------------------------------------------------

namespace {

std::string ratio_detail(std::uint64_t checked, const std::string& extra = "") {
  std::string out = "checked=" + std::to_string(checked);
  if (!extra.empty()) out += " " + extra;
  return out;
}

BranchingProgram parity_program(std::uint32_t n, bool accept_odd) {
  BranchingProgram b;
  b.n = n;
  b.d = 2;
  b.widths.assign(n + 1, 2);
  b.transitions.assign(n, {{0, 1}, {1, 0}});
  b.start = 0;
  b.accept = {accept_odd ? 1u : 0u};
  return b;
}

Rational brute_force_prob(const BranchingProgram& b) {
  std::uint64_t hits = 0;
  const auto words = all_words(b.n, b.d);
  for (const Word& x : words) hits += accepts(b, x);
  return Rational(hits, words.size());
}

std::vector<GateRow> run_lemma_gates(std::uint64_t seed) {
  std::vector<GateRow> gates;
  const Rng root(seed);

  // evaluate composes over any split of the input
  {
    Rng rng = root.substream("compose");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 40 && ok; ++trial) {
      FamilySpec spec;
      spec.n = 2 + static_cast<std::uint32_t>(rng.below(5));
      spec.w = 2 + static_cast<std::uint32_t>(rng.below(4));
      spec.permutation_only = rng.coin();
      const BranchingProgram b = random_family_member(spec, rng);
      const Word x = uniform_word(b.n, b.d, rng);
      for (std::size_t split = 0; split <= x.size(); ++split) {
        const Word head = x.substr(0, split);
        const Word tail = x.substr(split);
        const std::uint32_t mid = evaluate(b, 0, b.start, head);
        if (evaluate(b, split, mid, tail) != evaluate(b, 0, b.start, x)) ok = false;
        ++checked;
      }
    }
    gates.push_back({"evaluate-composition", ok, ratio_detail(checked)});
  }

  // exact acceptance probability equals brute-force enumeration
  {
    Rng rng = root.substream("exact-prob");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 30 && ok; ++trial) {
      FamilySpec spec;
      spec.n = 1 + static_cast<std::uint32_t>(rng.below(8));
      spec.w = 1 + static_cast<std::uint32_t>(rng.below(5));
      spec.permutation_only = rng.coin();
      const BranchingProgram b = random_family_member(spec, rng);
      if (accept_prob_exact(b).to_rational() != brute_force_prob(b)) ok = false;
      ++checked;
    }
    gates.push_back({"exact-prob-vs-enumeration", ok, ratio_detail(checked)});
  }

  // multi-step transitions of permutation programs never merge states
  {
    bool ok = true;
    std::uint64_t checked = 0;
    for (std::uint32_t w = 1; w <= 3 && ok; ++w) {
      for (std::uint32_t n = 1; n <= 3 && ok; ++n) {
        FamilySpec spec;
        spec.n = n;
        spec.w = w;
        spec.permutation_only = true;
        spec.endpoints = EndpointPolicy::fixed(0, {0});
        FamilyEnumerator en(spec);
        while (auto b = en.next()) {
          ++checked;
          for (std::uint32_t i = 0; i < n && ok; ++i) {
            for (std::uint32_t k = 1; i + k <= n && ok; ++k) {
              for (const Word& sigma : all_words(k, 2)) {
                std::uint32_t seen_mask = 0;
                for (std::uint32_t v = 0; v < w; ++v) {
                  const std::uint32_t t = evaluate(*b, i, v, sigma);
                  if (seen_mask & (1u << t)) {
                    ok = false;
                    break;
                  }
                  seen_mask |= 1u << t;
                }
                if (!ok) break;
              }
            }
          }
          if (!ok) break;
        }
      }
    }
    gates.push_back({"multistep-distinctness", ok, ratio_detail(checked)});
  }

  // matrix-power route agrees with the program route; rows sum to one
  {
    Rng rng = root.substream("walk");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const std::uint32_t vertices = 2 + static_cast<std::uint32_t>(rng.below(15));
      const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(8));
      const LabelledDigraph g = random_consistent_graph(vertices, 2, rng);
      const auto u = static_cast<std::uint32_t>(rng.below(vertices));
      Rational row_sum = 0;
      for (std::uint32_t v = 0; v < vertices; ++v) {
        const DyadicProb via_matrix = walk_prob_matrix(g, u, v, n);
        if (via_matrix != accept_prob_exact(graph_to_bp(g, u, v, n))) ok = false;
        row_sum += via_matrix.to_rational();
        ++checked;
      }
      if (row_sum != 1) ok = false;
    }
    gates.push_back({"walk-oracle-agreement", ok, ratio_detail(checked)});
  }

  // black-box evaluation matches the explicit induced program on every input
  {
    Rng rng = root.substream("hit-equiv");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 30 && ok; ++trial) {
      const std::uint32_t vertices = 2 + static_cast<std::uint32_t>(rng.below(7));
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(5));
      const LabelledDigraph g = random_consistent_graph(vertices, 2, rng);
      const auto u = static_cast<std::uint32_t>(rng.below(vertices));
      const auto v = static_cast<std::uint32_t>(rng.below(vertices));
      const BranchingProgram b = graph_to_bp(g, u, v, n);
      const auto draw = random_query_set(n, 2, 1 + rng.below(6), rng);
      const HitProgram hp = build_hit_program(b, draw.set);
      OracleSession session = OracleSession::over_program(b);
      for (const Word& x : all_words(n, 2)) {
        const int black = eval_hit_blackbox(session, draw.set, x);
        const int white = accepts(hp.explicit_bp, x);
        if (black != white || black > accepts(b, x)) ok = false;
        ++checked;
      }
      const std::uint64_t bound = width_bound(draw.set.size(), n, b.accept.size());
      if (hp.explicit_bp.width() > bound) ok = false;
      if (!check_permutation(hp.explicit_bp).is_permutation) ok = false;
    }
    gates.push_back({"hit-program-equivalence", ok, ratio_detail(checked)});
  }

  // growing the hitter only grows the kept-state sets
  {
    Rng rng = root.substream("hit-monotone");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
      FamilySpec spec;
      spec.n = n;
      spec.w = 2 + static_cast<std::uint32_t>(rng.below(5));
      spec.permutation_only = true;
      const BranchingProgram b = random_family_member(spec, rng);
      const auto small = random_query_set(n, 2, 1 + rng.below(4), rng);
      auto grown_words = small.set.strings;
      const auto extra = random_query_set(n, 2, 1 + rng.below(4), rng);
      grown_words.insert(grown_words.end(), extra.set.strings.begin(),
                         extra.set.strings.end());
      const QuerySet big = QuerySet::from_words(n, 2, grown_words);
      const auto k_small = compute_hit_states(b, small.set);
      const auto k_big = compute_hit_states(b, big);
      for (std::uint32_t i = 0; i <= n; ++i) {
        if (!std::includes(k_big[i].begin(), k_big[i].end(), k_small[i].begin(),
                           k_small[i].end())) {
          ok = false;
        }
        ++checked;
      }
    }
    gates.push_back({"hit-states-monotone", ok, ratio_detail(checked)});
  }

  // exhaustively verified hitters keep the restriction error within budget
  {
    bool ok = true;
    std::uint64_t checked = 0;
    const Rational delta(1, 4);
    FamilySpec single;
    single.n = 4;
    single.w = 2;
    single.permutation_only = true;
    single.endpoints = EndpointPolicy::all_single_accept();
    const Rational threshold = delta / (Rational(single.n) * 1);
    const HitterSearchResult found = minimal_hitter_search(single, threshold);
    if (!found.set.empty() && verify_hitter(found.set, single, threshold).ok) {
      FamilyEnumerator en(single);
      while (auto b = en.next()) {
        if (hit_approx_error(*b, found.set) > delta) ok = false;
        ++checked;
      }
    } else {
      ok = false;
    }
    gates.push_back({"hitter-restriction-error", ok, ratio_detail(checked)});
  }

  // every verified sampler's all-zeroes trace hits at doubled error
  {
    bool ok = true;
    std::uint64_t checked = 0;
    FamilySpec family;
    family.n = 4;
    family.w = 2;
    family.permutation_only = true;
    family.endpoints = EndpointPolicy::all_nonempty_accept();
    const Rational eps(1, 4);
    std::vector<std::unique_ptr<DeterministicSampler>> battery;
    battery.push_back(std::make_unique<AveragingSampler>(QuerySet::full_cube(4, 2)));
    battery.push_back(std::make_unique<ParityProbeSampler>(4));
    Rng rng = root.substream("battery");
    battery.push_back(std::make_unique<AveragingSampler>(
        random_query_set(4, 2, 48, rng).set));
    for (const auto& sampler : battery) {
      if (!verify_sampler(*sampler, family, eps).ok) continue;  // unverified: skip
      const QuerySet trace = hitter_from_sampler(*sampler, 4, 2);
      if (!verify_hitter(trace, family, 2 * eps).ok) ok = false;
      ++checked;
    }
    if (checked == 0) ok = false;
    gates.push_back({"sampler-trace-hits", ok, ratio_detail(checked)});
  }

  // small hitters always admit a parity witness, and witnesses verify
  {
    Rng rng = root.substream("adversary");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
      const std::uint64_t size = 1 + rng.below(n - 1);
      const auto draw = random_query_set(n, 2, size, rng);
      const auto witness = parity_adversary(draw.set);
      if (!witness) {
        ok = false;
        break;
      }
      const WitnessReport report =
          witness_verify(witness->program, draw.set, Rational(1, 2));
      if (!report.ok || !report.is_permutation || report.width != 2) ok = false;
      ++checked;
    }
    gates.push_back({"parity-witness-complete", ok, ratio_detail(checked)});
  }

  // serialization round-trips reproduce programs and graphs bit-exactly
  {
    Rng rng = root.substream("roundtrip");
    bool ok = true;
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      FamilySpec spec;
      spec.n = 1 + static_cast<std::uint32_t>(rng.below(6));
      spec.w = 1 + static_cast<std::uint32_t>(rng.below(6));
      spec.permutation_only = rng.coin();
      const BranchingProgram b = random_family_member(spec, rng);
      const Json j = program_to_json(b);
      if (program_to_json(program_from_json(j)).dump() != j.dump()) ok = false;
      const LabelledDigraph g =
          random_consistent_graph(1 + static_cast<std::uint32_t>(rng.below(12)), 2, rng);
      const Json gj = graph_to_json(g);
      if (graph_to_json(graph_from_json(gj)).dump() != gj.dump()) ok = false;
      ++checked;
    }
    gates.push_back({"json-round-trip", ok, ratio_detail(checked)});
  }

  // the parity program keeps its textbook acceptance probability (anchor)
  {
    const bool ok =
        accept_prob_exact(parity_program(5, true)).to_rational() == Rational(1, 2);
    gates.push_back({"parity-anchor", ok, ratio_detail(1)});
  }

  return gates;
}

}  // namespace

// ---------------------------------------------------------------------------
// Report serialization.
// ---------------------------------------------------------------------------

Json instance_to_json(const InstanceRow& row) {
  Json j;
  j["index"] = row.index;
  j["target"] = row.target;
  j["n"] = row.n;
  j["a"] = row.a;
  j["exact"] = to_fraction_string(row.exact);
  j["estimate"] = to_fraction_string(row.estimate);
  j["abs_error"] = to_fraction_string(row.abs_error);
  j["abs_error_dec"] = to_decimal_string(row.abs_error);
  j["base_distinct"] = row.base_distinct;
  j["query_bound"] = row.query_bound;
  j["inner_distinct"] = row.inner_distinct;
  j["inner_width"] = row.inner_width;
  j["hitter_raw"] = row.hitter_raw;
  j["hitter_distinct"] = row.hitter_distinct;
  j["gate_hitter"] = row.gate_hitter;
  j["gate_inner"] = row.gate_inner;
  j["gate_plan"] = row.gate_plan;
  j["pass"] = row.pass;
  return j;
}

Json report_to_json(const ExperimentReport& report) {
  Json j;
  j["run_id"] = report.run_id;
  j["csv_version"] = report.csv_version;
  j["config"] = report.config;
  j["epsilon"] = to_fraction_string(report.epsilon);
  Json instances = Json::array();
  for (const InstanceRow& row : report.instances) instances.push_back(instance_to_json(row));
  j["instances"] = instances;
  Json gates = Json::array();
  for (const GateRow& gate : report.gates) {
    gates.push_back({{"name", gate.name}, {"pass", gate.pass}, {"detail", gate.detail}});
  }
  j["gates"] = gates;
  j["aggregate"] = {{"max_abs_error", to_fraction_string(report.max_error)},
                    {"max_abs_error_dec", to_decimal_string(report.max_error)},
                    {"all_pass", report.all_pass}};
  return j;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  if (!report.gates.empty()) {
    out << "run_id,gate,pass,detail\n";
    for (const GateRow& gate : report.gates) {
      std::string detail = gate.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      out << report.run_id << ',' << gate.name << ',' << (gate.pass ? 1 : 0) << ','
          << detail << '\n';
    }
    return out.str();
  }
  out << "run_id,index,target,n,a,epsilon,exact,estimate,abs_error,abs_error_dec,"
         "base_distinct,query_bound,inner_distinct,inner_width,hitter_raw,"
         "hitter_distinct,gate_hitter,gate_inner,gate_plan,pass\n";
  for (const InstanceRow& row : report.instances) {
    out << report.run_id << ',' << row.index << ',' << row.target << ',' << row.n
        << ',' << row.a << ',' << to_fraction_string(report.epsilon) << ','
        << to_fraction_string(row.exact) << ',' << to_fraction_string(row.estimate)
        << ',' << to_fraction_string(row.abs_error) << ','
        << to_decimal_string(row.abs_error) << ',' << row.base_distinct << ','
        << row.query_bound << ',' << row.inner_distinct << ',' << row.inner_width
        << ',' << row.hitter_raw << ',' << row.hitter_distinct << ','
        << (row.gate_hitter ? 1 : 0) << ',' << (row.gate_inner ? 1 : 0) << ','
        << (row.gate_plan ? 1 : 0) << ',' << (row.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Scenario execution.
// ---------------------------------------------------------------------------

ExperimentReport run_scenario(const Json& config, const InstanceSink& sink) {
  if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
  const std::string kind = get_string(config, "kind");
  const std::uint64_t seed = get_u64(config, "seed", std::uint64_t{0});

  ExperimentReport report;
  report.config = config;
  report.run_id = "run-" + fnv1a_hex(config.dump());
  report.epsilon = 0;
  report.max_error = 0;

  if (kind == "lemma_suite") {
    report.gates = run_lemma_gates(seed);
    report.all_pass = std::all_of(report.gates.begin(), report.gates.end(),
                                  [](const GateRow& g) { return g.pass; });
    return report;
  }

  const Rational eps = get_rational(config, "epsilon");
  const Rational c = get_rational(config, "c", std::string("1"));
  report.epsilon = eps;
  const Json inner_cfg = config.contains("inner") ? config.at("inner")
                                                  : Json{{"kind", "full_cube"}};
  const Json hitter_cfg = config.contains("hitter") ? config.at("hitter")
                                                    : Json{{"kind", "full_cube"}};
  const Rng root(seed);

  if (kind == "single") {
    const std::uint32_t n = get_u32(config, "n");
    Rng target_rng = root.substream("target");
    TargetInstance target = build_target(config.at("target"), n, target_rng);
    const std::uint64_t a =
        get_u64(config, "a", std::uint64_t{target.program.accept.size()});
    const ParameterSchedule schedule = build_schedule(n, a, eps, c);
    InstanceRow row =
        run_instance(0, target.program, std::move(target.description), schedule,
                     inner_cfg, hitter_cfg, root.substream("instance-0"));
    if (sink) sink(instance_to_json(row));
    report.max_error = row.abs_error;
    report.all_pass = row.pass;
    report.instances.push_back(std::move(row));
    return report;
  }

  if (kind == "corpus") {
    const std::uint64_t count = get_u64(config, "count", std::uint64_t{50});
    const std::uint32_t v_min = get_u32(config, "vertices_min", 16);
    const std::uint32_t v_max = get_u32(config, "vertices_max", 256);
    const std::uint32_t n_min = get_u32(config, "n_min", 4);
    const std::uint32_t n_max = get_u32(config, "n_max", 8);
    if (v_min == 0 || v_min > v_max || n_min == 0 || n_min > n_max) {
      throw std::invalid_argument("config: empty corpus parameter range");
    }
    report.all_pass = true;
    const Rng corpus_rng = root.substream("corpus");
    for (std::uint64_t i = 0; i < count; ++i) {
      const Rng inst_rng = corpus_rng.substream("instance-" + std::to_string(i));
      Rng shape_rng = inst_rng.substream("shape");
      const std::uint32_t vertices =
          v_min + static_cast<std::uint32_t>(shape_rng.below(v_max - v_min + 1));
      const std::uint32_t n =
          n_min + static_cast<std::uint32_t>(shape_rng.below(n_max - n_min + 1));
      Json target = {{"kind", "random_graph"}, {"vertices", vertices}};
      Rng target_rng = inst_rng.substream("target");
      TargetInstance built = build_target(target, n, target_rng);
      const ParameterSchedule schedule = build_schedule(n, 1, eps, c);
      InstanceRow row = run_instance(i, built.program, std::move(built.description),
                                     schedule, inner_cfg, hitter_cfg, inst_rng);
      if (sink) sink(instance_to_json(row));
      report.max_error = std::max(report.max_error, row.abs_error);
      report.all_pass = report.all_pass && row.pass;
      report.instances.push_back(std::move(row));
    }
    return report;
  }

  throw std::invalid_argument("config: unknown scenario kind \"" + kind + "\"");
}

Json bundled_scenario(const std::string& name) {
  if (name == "cycle4") {
    return Json{{"kind", "single"},
                {"seed", 1},
                {"epsilon", "1/4"},
                {"c", "1"},
                {"n", 2},
                {"a", 1},
                {"inner", {{"kind", "full_cube"}}},
                {"hitter", {{"kind", "full_cube"}}},
                {"target", {{"kind", "cycle"}, {"vertices", 4}, {"u", 0}, {"v", 0}}}};
  }
  if (name == "lemma-suite") {
    return Json{{"kind", "lemma_suite"}, {"seed", 3}};
  }
  if (name == "corpus-small") {
    return Json{{"kind", "corpus"},
                {"seed", 7},
                {"epsilon", "1/4"},
                {"c", "1"},
                {"count", 10},
                {"vertices_min", 16},
                {"vertices_max", 64},
                {"n_min", 4},
                {"n_max", 6},
                {"inner", {{"kind", "full_cube"}}},
                {"hitter", {{"kind", "random"}, {"size", 64}, {"grow", true},
                            {"max_size", 8192}}}};
  }
  throw std::invalid_argument("unknown bundled scenario \"" + name + "\"");
}

std::vector<std::string> bundled_scenario_names() {
  return {"cycle4", "lemma-suite", "corpus-small"};
}

}  // namespace pbpsamp
