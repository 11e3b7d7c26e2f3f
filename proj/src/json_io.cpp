#include "pbpsamp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pbpsamp {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> fields,
                    const char* what) {
  if (!j.is_object()) {
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  }
  for (const char* f : fields) {
    if (!j.contains(f)) {
      throw std::invalid_argument(std::string(what) + ": missing field \"" + f + "\"");
    }
  }
}

}  // namespace

Json program_to_json(const BranchingProgram& b) {
  Json j;
  j["n"] = b.n;
  j["d"] = b.d;
  j["widths"] = b.widths;
  j["transitions"] = b.transitions;
  j["start"] = b.start;
  j["accept"] = b.accept;
  return j;
}

BranchingProgram program_from_json(const Json& j) {
  require_fields(j, {"n", "d", "widths", "transitions", "start", "accept"},
                 "program");
  BranchingProgram b;
  try {
    b.n = j.at("n").get<std::uint32_t>();
    b.d = j.at("d").get<std::uint32_t>();
    b.widths = j.at("widths").get<std::vector<std::uint32_t>>();
    b.transitions =
        j.at("transitions").get<std::vector<std::vector<std::vector<std::uint32_t>>>>();
    b.start = j.at("start").get<std::uint32_t>();
    b.accept = j.at("accept").get<std::vector<std::uint32_t>>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("program: malformed field: ") + e.what());
  }
  validate_program(b);
  return b;
}

Json graph_to_json(const LabelledDigraph& g) {
  Json j;
  j["vertices"] = g.vertices;
  j["d"] = g.d;
  j["perm"] = g.perm;
  return j;
}

LabelledDigraph graph_from_json(const Json& j) {
  require_fields(j, {"vertices", "d", "perm"}, "graph");
  LabelledDigraph g;
  try {
    g.vertices = j.at("vertices").get<std::uint32_t>();
    g.d = j.at("d").get<std::uint32_t>();
    g.perm = j.at("perm").get<std::vector<std::vector<std::uint32_t>>>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("graph: malformed field: ") + e.what());
  }
  check_alphabet(g.d);
  if (!check_consistent(g)) {
    throw std::invalid_argument("graph: labelling is not consistent");
  }
  return g;
}

void save_query_set(const QuerySet& q, const std::string& path,
                    const QuerySetMeta& meta) {
  std::ostringstream body;
  for (const Word& w : q.strings) body << w << '\n';
  write_text_file(path, body.str());
  Json j;
  j["n"] = meta.n;
  j["d"] = meta.d;
  j["kind"] = meta.kind;
  if (meta.epsilon) j["epsilon"] = *meta.epsilon;
  j["provenance"] = meta.provenance;
  save_json_file(j, path + ".meta.json");
}

QuerySet load_query_set(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<Word> words;
  std::istringstream in(text);
  for (Word line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::ifstream sidecar(path + ".meta.json");
  if (sidecar.good()) {
    Json meta;
    sidecar >> meta;
    require_fields(meta, {"n", "d"}, "query set sidecar");
    n = meta.at("n").get<std::uint32_t>();
    d = meta.at("d").get<std::uint32_t>();
  } else {
    if (words.empty()) {
      throw std::invalid_argument("query set file " + path +
                                  " is empty and has no sidecar");
    }
    n = static_cast<std::uint32_t>(words.front().size());
    char max_digit = '1';
    for (const Word& w : words) {
      for (char c : w) max_digit = std::max(max_digit, c);
    }
    d = static_cast<std::uint32_t>(max_digit - '0') + 1;
  }
  return QuerySet::from_words(n, d, std::move(words));
}

void save_query_log_lines(const OracleSession& session, const std::string& path) {
  std::ostringstream body;
  for (const auto& [word, answer] : session.log()) body << word << '\n';
  write_text_file(path, body.str());
}

void save_query_log_csv(const OracleSession& session, const std::string& path) {
  std::ostringstream body;
  body << "query,answer\n";
  for (const auto& [word, answer] : session.log()) {
    body << word << ',' << answer << '\n';
  }
  write_text_file(path, body.str());
}

void save_state_map_csv(const HitProgram& hp, const std::string& path) {
  std::ostringstream body;
  body << "bh_index,kind,layer,original\n";
  for (std::size_t layer = 0; layer < hp.state_map.size(); ++layer) {
    const auto& tags = hp.state_map[layer];
    for (std::size_t idx = 0; idx < tags.size(); ++idx) {
      const HitStateTag& tag = tags[idx];
      std::string kind;
      switch (tag.kind) {
        case HitStateTag::Kind::Real: kind = "real"; break;
        case HitStateTag::Kind::Padding: kind = "padding"; break;
        case HitStateTag::Kind::Sink:
          kind = "sink:" + std::to_string(tag.sink_layer);
          break;
      }
      body << idx << ',' << kind << ',' << layer << ',' << tag.value << '\n';
    }
  }
  write_text_file(path, body.str());
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const Json& j, const std::string& path) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::invalid_argument("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::invalid_argument("cannot write " + path);
  out << content;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string query_set_hash(const QuerySet& q) {
  std::string joined;
  for (const Word& w : q.strings) {
    joined += w;
    joined += '\n';
  }
  return fnv1a_hex(joined);
}

}  // namespace pbpsamp
