#ifndef PBPSAMP_REPORT_HPP
#define PBPSAMP_REPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "pbpsamp/json_io.hpp"
#include "pbpsamp/rational.hpp"
#include "pbpsamp/reduction.hpp"

namespace pbpsamp {

/// One verification gate of a lemma-suite run.
struct GateRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// One sampling instance of a single/corpus run. Exact quantities are
/// rationals; decimals appear only in display columns of the CSV.
struct InstanceRow {
  std::uint64_t index = 0;
  std::string target;
  std::uint32_t n = 0;
  std::uint64_t a = 1;
  Rational exact;
  Rational estimate;
  Rational abs_error;
  std::uint64_t base_distinct = 0;
  std::uint64_t query_bound = 0;
  std::uint64_t inner_distinct = 0;
  std::uint64_t inner_width = 0;
  std::uint64_t hitter_raw = 0;       // requested draws
  std::uint64_t hitter_distinct = 0;  // |H|
  bool gate_hitter = false;
  bool gate_inner = false;
  bool gate_plan = false;
  bool pass = false;
};

struct ExperimentReport {
  std::string run_id;
  int csv_version = 1;
  Json config;
  Rational epsilon;  // 0 for lemma suites
  std::vector<InstanceRow> instances;
  std::vector<GateRow> gates;
  Rational max_error;
  bool all_pass = false;
};

Json report_to_json(const ExperimentReport& report);
/// Fixed, versioned column order; byte-identical for identical runs.
std::string report_to_csv(const ExperimentReport& report);
Json instance_to_json(const InstanceRow& row);

/// Streaming hook: called with each instance row as it completes (NDJSON
/// emission for long corpora). Rows arrive in index order.
using InstanceSink = std::function<void(const Json&)>;

/// Executes a scenario config: kind "single" (one target, one estimate),
/// "corpus" (a batch of random graph targets), or "lemma_suite" (the
/// invariant battery). Throws std::invalid_argument on malformed configs.
ExperimentReport run_scenario(const Json& config, const InstanceSink& sink = {});

/// Built-in scenario configs by name ("cycle4", "lemma-suite", "corpus-small").
Json bundled_scenario(const std::string& name);
std::vector<std::string> bundled_scenario_names();

}  // namespace pbpsamp

#endif  // PBPSAMP_REPORT_HPP
