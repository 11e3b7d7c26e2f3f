// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
//
// Every expected value is exact (rational or integer); randomized batteries
// run on frozen seeds through the project generator, so each criterion is
// deterministic and reproducible.

#include <cstdint>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbpsamp/adversary.hpp"
#include "pbpsamp/graph.hpp"
#include "pbpsamp/hit_program.hpp"
#include "pbpsamp/json_io.hpp"
#include "pbpsamp/reduction.hpp"
#include "pbpsamp/report.hpp"
#include "pbpsamp/sampler.hpp"

#include "helpers.hpp"

using namespace pbpsamp;
using namespace pbpsamp::testing;

namespace {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Width-law tally fed by every induced-program construction in this suite.
struct WidthTally {
  std::uint64_t constructions = 0;
  std::uint64_t violations = 0;

  void record(const BranchingProgram& base, const QuerySet& hitter,
              const HitProgram& hp) {
    ++constructions;
    const std::uint64_t per_layer = hitter.size() * base.accept.size();
    for (const auto& layer : hp.hit_states) {
      if (layer.size() > per_layer) ++violations;
    }
    if (hp.explicit_bp.width() >
        width_bound(hitter.size(), base.n, base.accept.size())) {
      ++violations;
    }
    if (!check_permutation(hp.explicit_bp).is_permutation) ++violations;
  }
};

WidthTally width_tally;

BranchingProgram random_graph_program(Rng& rng, std::uint32_t max_vertices,
                                      std::uint32_t n, std::uint32_t max_accept) {
  const std::uint32_t vertices =
      2 + static_cast<std::uint32_t>(rng.below(max_vertices - 1));
  const LabelledDigraph g = random_consistent_graph(vertices, 2, rng);
  BranchingProgram b =
      graph_to_bp(g, static_cast<std::uint32_t>(rng.below(vertices)),
                  static_cast<std::uint32_t>(rng.below(vertices)), n);
  while (b.accept.size() < max_accept && rng.coin()) {
    const auto extra = static_cast<std::uint32_t>(rng.below(vertices));
    if (!std::binary_search(b.accept.begin(), b.accept.end(), extra)) {
      b.accept.push_back(extra);
      std::sort(b.accept.begin(), b.accept.end());
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// 1. Black-box evaluation agrees with the explicit induced program on every
//    input, across random (program, hitter) pairs.
// ---------------------------------------------------------------------------
CriterionResult criterion_oracle_equivalence() {
  CriterionResult result{1, "oracle-equivalence", false, ""};
  Rng rng = Rng(101).substream("oracle-equivalence");
  std::uint64_t pairs = 0, inputs = 0, mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));  // 2..8
    const BranchingProgram b = random_graph_program(rng, 16, n, 3);
    const auto draw = random_query_set(n, 2, 1 + rng.below(8), rng);
    const HitProgram hp = build_hit_program(b, draw.set);
    width_tally.record(b, draw.set, hp);
    OracleSession session = OracleSession::over_program(b);
    ++pairs;
    for (const Word& x : all_words(n, 2)) {
      ++inputs;
      if (eval_hit_blackbox(session, draw.set, x) != accepts(hp.explicit_bp, x)) {
        ++mismatches;
      }
    }
  }
  result.pass = pairs >= 200 && mismatches == 0;
  result.detail = "pairs=" + std::to_string(pairs) +
                  " inputs=" + std::to_string(inputs) +
                  " mismatches=" + std::to_string(mismatches);
  return result;
}

// ---------------------------------------------------------------------------
// 3. Multi-step transitions of permutation programs are injective:
//    exhaustive for n <= 4, w <= 3, plus 100 random larger instances.
// ---------------------------------------------------------------------------
bool multistep_injective(const BranchingProgram& b) {
  const std::uint32_t w = b.widths[0];
  for (std::uint32_t i = 0; i < b.n; ++i) {
    for (std::uint32_t k = 1; i + k <= b.n; ++k) {
      for (const Word& sigma : all_words(k, 2)) {
        std::uint64_t seen = 0;
        for (std::uint32_t v = 0; v < w; ++v) {
          const std::uint32_t t = evaluate(b, i, v, sigma);
          if (seen & (1ULL << t)) return false;
          seen |= 1ULL << t;
        }
      }
    }
  }
  return true;
}

CriterionResult criterion_injectivity() {
  CriterionResult result{3, "multistep-injectivity", false, ""};
  std::uint64_t checked = 0, violations = 0;
  // Exhaustive transition structures; endpoint choices do not enter the
  // property, so they are pinned.
  for (std::uint32_t w = 1; w <= 3; ++w) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      FamilySpec spec;
      spec.n = n;
      spec.w = w;
      spec.permutation_only = true;
      spec.endpoints = EndpointPolicy::fixed(0, {0});
      FamilyEnumerator en(spec, 2'000'000);
      while (auto b = en.next()) {
        ++checked;
        if (!multistep_injective(*b)) ++violations;
      }
    }
  }
  const std::uint64_t exhaustive = checked;
  Rng rng = Rng(103).substream("injectivity-random");
  for (int trial = 0; trial < 100; ++trial) {
    FamilySpec spec;
    spec.n = 5 + static_cast<std::uint32_t>(rng.below(2));
    spec.w = 4 + static_cast<std::uint32_t>(rng.below(5));
    spec.permutation_only = true;
    const BranchingProgram b = random_family_member(spec, rng);
    ++checked;
    if (!multistep_injective(b)) ++violations;
  }
  result.pass = violations == 0;
  result.detail = "exhaustive=" + std::to_string(exhaustive) + " random=100" +
                  " violations=" + std::to_string(violations);
  return result;
}

// ---------------------------------------------------------------------------
// 4. Exhaustively verified hitters keep the restriction error within budget,
//    and the restriction never accepts more than the original.
// ---------------------------------------------------------------------------
CriterionResult criterion_approximation_law() {
  CriterionResult result{4, "restriction-approximation", false, ""};
  Rng rng = Rng(104).substream("approximation");
  std::uint64_t verified_hitters = 0, programs = 0, error_violations = 0,
                one_sided_violations = 0;

  struct Shape {
    std::uint32_t n, w;
    std::vector<std::uint64_t> accept_sizes;
  };
  const std::vector<Shape> shapes = {
      {4, 2, {1, 2}}, {5, 2, {1, 2}}, {6, 2, {1, 2}}, {2, 3, {1, 2}}, {3, 3, {1}}};

  for (const Shape& shape : shapes) {
    FamilySpec single;
    single.n = shape.n;
    single.w = shape.w;
    single.permutation_only = true;
    single.endpoints = EndpointPolicy::all_single_accept();

    FamilySpec all;
    all.n = shape.n;
    all.w = shape.w;
    all.permutation_only = true;
    all.endpoints = EndpointPolicy::all_nonempty_accept();

    for (const std::uint64_t a : shape.accept_sizes) {
      for (const Rational& delta : {Rational(1, 2), Rational(1, 4)}) {
        const Rational threshold = delta / (Rational(shape.n) * Rational(a));

        std::vector<QuerySet> candidates;
        candidates.push_back(minimal_hitter_search(single, threshold).set);
        candidates.push_back(random_query_set(shape.n, 2, 6, rng).set);
        candidates.push_back(random_query_set(shape.n, 2, 12, rng).set);

        for (const QuerySet& h : candidates) {
          if (h.empty()) continue;
          if (!verify_hitter(h, single, threshold).ok) continue;  // hypothesis not met
          ++verified_hitters;
          FamilyEnumerator en(all);
          while (auto b = en.next()) {
            if (b->accept.size() != a) continue;
            ++programs;
            const HitProgram hp = build_hit_program(*b, h);
            width_tally.record(*b, h, hp);
            const Rational error =
                rational_abs(accept_prob_exact(hp.explicit_bp).to_rational() -
                             accept_prob_exact(*b).to_rational());
            if (error > delta) ++error_violations;
            for (const Word& x : all_words(shape.n, 2)) {
              if (accepts(hp.explicit_bp, x) > accepts(*b, x)) ++one_sided_violations;
            }
          }
        }
      }
    }
  }
  result.pass = verified_hitters > 0 && error_violations == 0 &&
                one_sided_violations == 0;
  result.detail = "verified_hitters=" + std::to_string(verified_hitters) +
                  " programs=" + std::to_string(programs) +
                  " error_violations=" + std::to_string(error_violations) +
                  " one_sided_violations=" + std::to_string(one_sided_violations);
  return result;
}

// ---------------------------------------------------------------------------
// 5. End-to-end width reduction on a corpus of random walk problems.
// ---------------------------------------------------------------------------
CriterionResult criterion_end_to_end() {
  CriterionResult result{5, "end-to-end-sampler", false, ""};
  const Rational eps(1, 4);
  Rng root = Rng(105).substream("corpus");
  std::uint64_t instances = 0, gate_failures = 0, bound_failures = 0,
                plan_failures = 0;
  Rational max_error = 0;
  std::uint64_t max_vertices_seen = 0;

  const std::uint32_t vertex_grid[] = {16, 32, 64, 128, 256};
  for (int trial = 0; trial < 60; ++trial) {
    Rng inst = root.substream("instance-" + std::to_string(trial));
    Rng shape = inst.substream("shape");
    const std::uint32_t vertices = vertex_grid[shape.below(5)];
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(shape.below(5));  // 4..8
    Rng graph_rng = inst.substream("graph");
    const LabelledDigraph g = random_consistent_graph(vertices, 2, graph_rng);
    const BranchingProgram b =
        graph_to_bp(g, static_cast<std::uint32_t>(graph_rng.below(vertices)),
                    static_cast<std::uint32_t>(graph_rng.below(vertices)), n);
    const ParameterSchedule schedule = build_schedule(n, 1, eps, Rational(1));

    // grow a random hitter until the white-box adequacy gate passes
    Rng hitter_rng = inst.substream("hitter");
    QuerySet hitter;
    bool gate = false;
    for (std::uint64_t size = 64; size <= 16384; size *= 2) {
      hitter = random_query_set(n, 2, size, hitter_rng).set;
      if (hitter_covers_program(b, hitter, schedule.hitter_gate_threshold()).ok) {
        gate = true;
        break;
      }
    }
    if (!gate) {
      ++gate_failures;
      continue;
    }

    // mostly exact full-cube inner sampling, some random averaging plans
    const bool random_inner = trial % 5 == 4;
    Rng inner_rng = inst.substream("inner-sampler");
    const InnerSamplerFactory factory = random_inner
                                            ? random_averaging_factory(inner_rng.next(), 256)
                                            : full_cube_factory();

    OracleSession session = OracleSession::over_program(b);
    const SampleRun run = unbounded_sampler(
        session, schedule, factory,
        [&](const ParameterSchedule&) { return hitter; });
    ++instances;
    max_vertices_seen = std::max<std::uint64_t>(max_vertices_seen, vertices);

    const Rational exact = accept_prob_exact(b).to_rational();
    max_error = std::max(max_error, rational_abs(run.estimate - exact));
    if (run.base_distinct > run.accounting_bound) ++bound_failures;
    if (!run.plan_preregistered) ++plan_failures;

    const HitProgram hp = build_hit_program(b, hitter);
    width_tally.record(b, hitter, hp);
  }

  result.pass = instances >= 50 && gate_failures == 0 && max_error <= eps &&
                bound_failures == 0 && plan_failures == 0;
  result.detail = "instances=" + std::to_string(instances) +
                  " max_error=" + to_fraction_string(max_error) + " (<= 1/4)" +
                  " bound_failures=" + std::to_string(bound_failures) +
                  " plan_failures=" + std::to_string(plan_failures) +
                  " max_vertices=" + std::to_string(max_vertices_seen);
  return result;
}

// ---------------------------------------------------------------------------
// 6. Every verified sampler's all-zeroes trace is a hitter at doubled error.
// ---------------------------------------------------------------------------
CriterionResult criterion_sampler_to_hitter() {
  CriterionResult result{6, "sampler-implies-hitter", false, ""};
  Rng rng = Rng(106).substream("battery");
  std::uint64_t verified = 0, trace_failures = 0, skipped = 0;

  struct FamilyShape {
    std::uint32_t n, w;
  };
  const std::vector<FamilyShape> shapes = {{3, 2}, {4, 2}, {2, 3}};
  const Rational eps(1, 4);

  for (const FamilyShape& shape : shapes) {
    FamilySpec family;
    family.n = shape.n;
    family.w = shape.w;
    family.permutation_only = true;
    family.endpoints = EndpointPolicy::all_nonempty_accept();

    std::vector<std::unique_ptr<DeterministicSampler>> battery;
    battery.push_back(
        std::make_unique<AveragingSampler>(QuerySet::full_cube(shape.n, 2)));
    if (shape.w == 2) {
      battery.push_back(std::make_unique<ParityProbeSampler>(shape.n));
    }
    for (const std::uint64_t size : {24u, 48u, 64u}) {
      battery.push_back(std::make_unique<AveragingSampler>(
          random_query_set(shape.n, 2, size, rng).set));
    }

    for (const auto& sampler : battery) {
      if (!verify_sampler(*sampler, family, eps).ok) {
        ++skipped;
        continue;
      }
      ++verified;
      const QuerySet trace = hitter_from_sampler(*sampler, shape.n, 2);
      if (!verify_hitter(trace, family, 2 * eps).ok) ++trace_failures;
    }
  }
  result.pass = verified >= 6 && trace_failures == 0;
  result.detail = "verified=" + std::to_string(verified) +
                  " unverified_skipped=" + std::to_string(skipped) +
                  " trace_failures=" + std::to_string(trace_failures);
  return result;
}

// ---------------------------------------------------------------------------
// 7. Adversary completeness at exact bounds.
// ---------------------------------------------------------------------------
CriterionResult criterion_adversaries() {
  CriterionResult result{7, "adversary-completeness", false, ""};
  Rng rng = Rng(107).substream("adversaries");
  std::uint64_t parity_runs = 0, parity_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(11));  // 2..12
    const std::uint64_t size = 1 + rng.below(n - 1);                        // <= n-1
    const auto draw = random_query_set(n, 2, size, rng);
    ++parity_runs;
    const auto witness = parity_adversary(draw.set);
    if (!witness) {
      ++parity_failures;
      continue;
    }
    const WitnessReport report =
        witness_verify(witness->program, draw.set, Rational(1, 2));
    if (!report.ok || !report.is_permutation || report.width != 2) ++parity_failures;
  }

  std::uint64_t prefix_fired = 0, prefix_failures = 0, prefix_missed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(6));
    const std::uint64_t a = 1 + rng.below(3);
    const Rational eps(1, 1u << (3 + rng.below(3)));  // 1/8, 1/16, 1/32
    const auto draw = random_query_set(n, 2, 1 + rng.below(8), rng);

    // recompute the firing precondition independently
    const Rational capacity = Rational(a) / (2 * eps);
    std::uint32_t l = 0;
    while (Rational(BigInt(1) << (l + 1)) <= capacity && l + 1 <= n) ++l;
    std::set<Word> prefixes;
    for (const Word& x : draw.set.strings) prefixes.insert(x.substr(0, l));
    const bool expected = l >= 1 && ((1ULL << l) - prefixes.size()) >= a;

    const auto witness = prefix_adversary(draw.set, a, eps);
    if (witness.has_value() != expected) {
      ++prefix_missed;
      continue;
    }
    if (!witness) continue;
    ++prefix_fired;
    const Rational mass = accept_prob_exact(*witness).to_rational();
    const bool exact_mass = mass == Rational(a, BigInt(1) << l);
    const bool at_bound = mass >= 2 * eps;  // a * 2^-l >= 2 eps
    if (!exact_mass || !at_bound ||
        !witness_verify(*witness, draw.set, 2 * eps).ok ||
        !check_permutation(*witness).is_permutation) {
      ++prefix_failures;
    }
  }

  std::uint64_t match_fired = 0, match_failures = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(6));
    const Rational eps(1, 1u << (2 + rng.below(3)));  // dyadic: 2^-l == 2 eps
    const auto draw = random_query_set(n, 2, 1 + rng.below(6), rng);
    const auto witness = prefix_match_adversary(draw.set, eps);
    if (!witness) continue;
    ++match_fired;
    const Rational mass = accept_prob_exact(*witness).to_rational();
    if (mass < 2 * eps || !witness_verify(*witness, draw.set, 2 * eps).ok ||
        check_permutation(*witness).is_permutation || witness->width() != 2) {
      ++match_failures;
    }
  }

  result.pass = parity_runs == 1000 && parity_failures == 0 &&
                prefix_missed == 0 && prefix_failures == 0 && prefix_fired > 200 &&
                match_failures == 0 && match_fired > 100;
  result.detail = "parity=" + std::to_string(parity_runs) + "/failures=" +
                  std::to_string(parity_failures) +
                  " prefix_fired=" + std::to_string(prefix_fired) + "/failures=" +
                  std::to_string(prefix_failures + prefix_missed) +
                  " match_fired=" + std::to_string(match_fired) + "/failures=" +
                  std::to_string(match_failures);
  return result;
}

// ---------------------------------------------------------------------------
// 8. Random plans: failure rate non-increasing in size; some small plan is a
//    verified sampler for the fully enumerated family.
// ---------------------------------------------------------------------------
CriterionResult criterion_probabilistic_method() {
  CriterionResult result{8, "random-plan-size-law", false, ""};
  FamilySpec family;
  family.n = 4;
  family.w = 2;
  family.permutation_only = true;
  family.endpoints = EndpointPolicy::all_nonempty_accept();
  const Rational eps(1, 4);

  const std::uint64_t sizes[] = {4, 8, 16, 32, 64};
  const int seeds = 120;
  std::vector<std::uint64_t> failures(5, 0);
  bool some_small_pass = false;
  for (int which = 0; which < 5; ++which) {
    for (int seed = 0; seed < seeds; ++seed) {
      Rng rng = Rng(108).substream("size-" + std::to_string(sizes[which]) +
                                   "-seed-" + std::to_string(seed));
      const auto draw = random_query_set(4, 2, sizes[which], rng);
      const VerifyVerdict verdict = verify_sampler(draw.set, family, eps);
      if (!verdict.ok) {
        ++failures[which];
      } else if (!some_small_pass && draw.set.size() <= 64 && verdict.exhaustive) {
        some_small_pass = true;
      }
    }
  }
  bool monotone = true;
  for (int i = 0; i + 1 < 5; ++i) {
    if (failures[i] < failures[i + 1]) monotone = false;
  }
  result.pass = monotone && some_small_pass;
  std::ostringstream rates;
  rates << "failures/" << seeds << "=";
  for (int i = 0; i < 5; ++i) rates << (i ? ";" : "") << failures[i];
  result.detail = rates.str() + " monotone=" + (monotone ? "1" : "0") +
                  " small_plan_verified=" + (some_small_pass ? "1" : "0");
  return result;
}

// ---------------------------------------------------------------------------
// 9. Exactness against enumeration up to n = 14, and byte-identical reports.
// ---------------------------------------------------------------------------
CriterionResult criterion_exactness_reproducibility() {
  CriterionResult result{9, "exactness-reproducibility", false, ""};
  Rng rng = Rng(109).substream("exactness");
  std::uint64_t programs = 0, mismatches = 0;
  for (std::uint32_t n = 1; n <= 14; ++n) {
    for (int rep = 0; rep < (n <= 10 ? 3 : 2); ++rep) {
      FamilySpec spec;
      spec.n = n;
      spec.w = 1 + static_cast<std::uint32_t>(rng.below(4));
      spec.permutation_only = rng.coin();
      const BranchingProgram b = random_family_member(spec, rng);
      ++programs;
      if (accept_prob_exact(b).to_rational() != brute_force_prob(b)) ++mismatches;
    }
  }
  // fixed-shape anchors
  const BranchingProgram parity14 = parity_program(14, true);
  ++programs;
  if (accept_prob_exact(parity14).to_rational() != brute_force_prob(parity14)) {
    ++mismatches;
  }

  const Json config = bundled_scenario("corpus-small");
  const ExperimentReport first = run_scenario(config);
  const ExperimentReport second = run_scenario(config);
  const bool bytes_equal =
      report_to_json(first).dump(2) == report_to_json(second).dump(2) &&
      report_to_csv(first) == report_to_csv(second);

  result.pass = mismatches == 0 && bytes_equal && first.all_pass;
  result.detail = "programs=" + std::to_string(programs) +
                  " mismatches=" + std::to_string(mismatches) +
                  " reports_byte_identical=" + (bytes_equal ? "1" : "0");
  return result;
}

// Criterion 2 reads the tally the other criteria accumulated.
CriterionResult criterion_width_law() {
  CriterionResult result{2, "width-law", false, ""};
  result.pass = width_tally.constructions > 0 && width_tally.violations == 0;
  result.detail = "constructions=" + std::to_string(width_tally.constructions) +
                  " violations=" + std::to_string(width_tally.violations);
  return result;
}

}  // namespace

int main() {
  std::vector<CriterionResult> results;
  results.push_back(criterion_oracle_equivalence());
  results.push_back(criterion_injectivity());
  results.push_back(criterion_approximation_law());
  results.push_back(criterion_end_to_end());
  results.push_back(criterion_sampler_to_hitter());
  results.push_back(criterion_adversaries());
  results.push_back(criterion_probabilistic_method());
  results.push_back(criterion_exactness_reproducibility());
  results.push_back(criterion_width_law());  // fed by 1, 4, 5

  std::sort(results.begin(), results.end(),
            [](const CriterionResult& a, const CriterionResult& b) {
              return a.number < b.number;
            });
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.number << " ("
              << r.name << "): " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << "\n";
  return all_pass ? 0 : 1;
}
