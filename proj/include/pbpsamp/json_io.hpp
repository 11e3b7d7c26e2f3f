#ifndef PBPSAMP_JSON_IO_HPP
#define PBPSAMP_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "pbpsamp/bp.hpp"
#include "pbpsamp/graph.hpp"
#include "pbpsamp/hit_program.hpp"
#include "pbpsamp/oracle.hpp"
#include "pbpsamp/sampler.hpp"

namespace pbpsamp {

using Json = nlohmann::json;

// Program format: {"n":..., "d":..., "widths":[...], "transitions":[[[...]]],
// "start":..., "accept":[...]} with transitions[r][s][sigma] = target.
// Parsing validates; serialize(parse(text)) reproduces the same value, and
// dumps are canonical (sorted keys), so round-trips are byte-stable.
Json program_to_json(const BranchingProgram& b);
BranchingProgram program_from_json(const Json& j);

// Graph format: {"vertices":..., "d":..., "perm":[[...],[...]]} where
// perm[sigma] lists the sigma-labelled out-neighbour of every vertex.
Json graph_to_json(const LabelledDigraph& g);
LabelledDigraph graph_from_json(const Json& j);

/// Sidecar metadata written next to a query-set file as <path>.meta.json.
struct QuerySetMeta {
  std::uint32_t n = 0;
  std::uint32_t d = 2;
  std::string kind;  // e.g. "random", "greedy", "full_cube", "trace"
  std::optional<std::string> epsilon;
  Json provenance = Json::object();  // seed / search parameters
};

/// Newline-delimited digit strings plus the sidecar.
void save_query_set(const QuerySet& q, const std::string& path,
                    const QuerySetMeta& meta);

/// Loads a query-set file; shape comes from the sidecar when present, and is
/// otherwise inferred (n from the first line, d = 1 + largest digit, at
/// least 2).
QuerySet load_query_set(const std::string& path);

// Query-log exports: the distinct queries in first-seen order, as plain
// lines and as a (query,answer) CSV.
void save_query_log_lines(const OracleSession& session, const std::string& path);
void save_query_log_csv(const OracleSession& session, const std::string& path);

/// State-map export: bh_index, kind, layer, original per row.
void save_state_map_csv(const HitProgram& hp, const std::string& path);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a digest used to fingerprint query sets in provenance blocks.
std::string fnv1a_hex(const std::string& data);
std::string query_set_hash(const QuerySet& q);

}  // namespace pbpsamp

#endif  // PBPSAMP_JSON_IO_HPP
