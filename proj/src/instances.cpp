#include "sdplstm/instances.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "sdplstm/error.hpp"

namespace sdplstm {

namespace {

using nlohmann::json;

constexpr const char* kInstanceFormat = "sdplstm-instances";
constexpr int kInstanceFormatVersion = 1;

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from(const json& j) {
  auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Collapsed index of every original token.
std::vector<std::size_t> collapse_map(const SentenceRecord& s) {
  std::vector<std::size_t> owner_start(s.tokens.size(), 0);
  std::vector<bool> inside(s.tokens.size(), false);
  for (const auto& e : s.entities) {
    for (std::size_t t = e.token_start + 1; t <= e.token_end; ++t) {
      inside[t] = true;
      owner_start[t] = e.token_start;
    }
  }
  std::vector<std::size_t> map(s.tokens.size(), 0);
  std::size_t next = 0;
  for (std::size_t t = 0; t < s.tokens.size(); ++t) {
    map[t] = inside[t] ? map[owner_start[t]] : next++;
  }
  return map;
}

}  // namespace

bool SdpInstance::operator==(const SdpInstance& o) const {
  if (id != o.id || sentence_id != o.sentence_id || label != o.label || tokens != o.tokens ||
      pos_tags != o.pos_tags || word_vectors.size() != o.word_vectors.size()) {
    return false;
  }
  for (std::size_t i = 0; i < word_vectors.size(); ++i) {
    if (word_vectors[i] != o.word_vectors[i]) return false;
  }
  return true;
}

std::string_view to_string(ExclusionReason r) {
  return r == ExclusionReason::Disconnected ? "disconnected" : "path_too_long";
}

std::size_t InstanceSet::excluded_count(ExclusionReason reason) const {
  return static_cast<std::size_t>(std::count_if(
      excluded.begin(), excluded.end(), [&](const auto& e) { return e.reason == reason; }));
}

std::vector<DependencyEdge> remap_edges(const SentenceRecord& original,
                                        const std::vector<DependencyEdge>& edges) {
  const auto map = collapse_map(original);
  std::vector<DependencyEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.head >= map.size() || e.dependent >= map.size()) {
      throw IndexOutOfRange("edge (" + std::to_string(e.head) + "," + std::to_string(e.dependent) +
                            ") in sentence '" + original.id + "' with " +
                            std::to_string(map.size()) + " tokens");
    }
    if (e.head == e.dependent) {
      throw SelfLoop("edge (" + std::to_string(e.head) + "," + std::to_string(e.dependent) +
                     ") in sentence '" + original.id + "'");
    }
    std::size_t h = map[e.head];
    std::size_t d = map[e.dependent];
    if (h == d) continue;
    out.push_back(DependencyEdge{h, d, e.relation});
  }
  return out;
}

std::pair<long, long> relative_positions(std::size_t k, std::size_t n) {
  return {static_cast<long>(k), static_cast<long>(k) - static_cast<long>(n - 1)};
}

InstanceSet preprocess(const std::vector<SentenceRecord>& corpus, const DependencyIndex& deps,
                       const EmbeddingTable& embeddings, const PreprocessOptions& options) {
  InstanceSet set;
  set.word_dim = embeddings.dimension();
  set.window = options.window;
  set.use_pos = options.use_pos;
  set.use_position = options.use_position;
  set.oov_seed = embeddings.oov_seed();

  std::unordered_set<std::string> known;
  for (const auto& s : corpus) known.insert(s.id);
  for (const auto& [sid, edges] : deps) {
    if (!known.count(sid)) {
      throw InputError("dependency data for sentence '" + sid + "' not present in the corpus");
    }
  }

  const std::vector<DependencyEdge> no_edges;
  for (const auto& s : corpus) {
    auto pairs = generate_candidates(s);
    if (pairs.empty()) continue;
    auto it = deps.find(s.id);
    if (it == deps.end() && options.require_dependencies) throw MissingDependencyData(s.id);
    const auto edges = remap_edges(s, it == deps.end() ? no_edges : it->second);

    for (const auto& pair : pairs) {
      const SentenceRecord g = generalize(s, pair);
      const DependencyGraph graph = build_graph(g, edges);
      const std::size_t src = g.find_entity(pair.prot1)->token_start;
      const std::size_t dst = g.find_entity(pair.prot2)->token_start;
      const std::string id = candidate_id(pair);
      SdpPath path;
      try {
        path = shortest_path(graph, src, dst, options.max_sdp_tokens);
      } catch (const Disconnected&) {
        set.excluded.push_back({id, s.id, pair.label, ExclusionReason::Disconnected});
        continue;
      } catch (const PathTooLong&) {
        set.excluded.push_back({id, s.id, pair.label, ExclusionReason::PathTooLong});
        continue;
      }
      SdpInstance inst;
      inst.id = id;
      inst.sentence_id = s.id;
      inst.label = pair.label;
      for (auto& tt : sdp_tokens(path, g)) {
        inst.word_vectors.push_back(embeddings.lookup(tt.token));
        inst.tokens.push_back(std::move(tt.token));
        inst.pos_tags.push_back(std::move(tt.pos_tag));
      }
      set.instances.push_back(std::move(inst));
    }
  }
  return set;
}

void write_instances(std::ostream& out, const InstanceSet& set) {
  json header = {{"format", kInstanceFormat},         {"version", kInstanceFormatVersion},
                 {"word_dim", set.word_dim},         {"window", set.window},
                 {"use_pos", set.use_pos},           {"use_position", set.use_position},
                 {"oov_seed", set.oov_seed},         {"instances", set.instances.size()},
                 {"excluded", set.excluded.size()}};
  out << header.dump() << '\n';
  for (const auto& inst : set.instances) {
    json vectors = json::array();
    for (const auto& v : inst.word_vectors) vectors.push_back(vector_json(v));
    json j = {{"kind", "instance"},
              {"id", inst.id},
              {"sentence_id", inst.sentence_id},
              {"label", static_cast<int>(inst.label)},
              {"tokens", inst.tokens},
              {"pos", inst.pos_tags},
              {"vectors", std::move(vectors)}};
    out << j.dump() << '\n';
  }
  for (const auto& ex : set.excluded) {
    json j = {{"kind", "excluded"},
              {"id", ex.id},
              {"sentence_id", ex.sentence_id},
              {"label", static_cast<int>(ex.label)},
              {"reason", to_string(ex.reason)}};
    out << j.dump() << '\n';
  }
}

InstanceSet read_instances(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto parse = [&](const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  };
  if (!std::getline(in, line)) throw FormatError("empty instance file");
  ++line_no;
  InstanceSet set;
  try {
    json header = parse(line);
    if (header.value("format", "") != kInstanceFormat) throw FormatError("not an instance file");
    if (header.at("version").get<int>() != kInstanceFormatVersion) {
      throw VersionMismatch("instance file version " + header.at("version").dump() +
                            ", reader version " + std::to_string(kInstanceFormatVersion));
    }
    set.word_dim = header.at("word_dim").get<std::size_t>();
    set.window = header.at("window").get<std::size_t>();
    set.use_pos = header.at("use_pos").get<bool>();
    set.use_position = header.at("use_position").get<bool>();
    set.oov_seed = header.at("oov_seed").get<std::uint64_t>();

    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json j = parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      const int label = j.at("label").get<int>();
      if (label != 0 && label != 1) throw ParseError(line_no, "label must be 0 or 1");
      if (kind == "instance") {
        SdpInstance inst;
        inst.id = j.at("id").get<std::string>();
        inst.sentence_id = j.at("sentence_id").get<std::string>();
        inst.label = static_cast<Label>(label);
        inst.tokens = j.at("tokens").get<std::vector<std::string>>();
        inst.pos_tags = j.at("pos").get<std::vector<std::string>>();
        for (const auto& v : j.at("vectors")) inst.word_vectors.push_back(vector_from(v));
        if (inst.tokens.empty() || inst.pos_tags.size() != inst.tokens.size() ||
            inst.word_vectors.size() != inst.tokens.size()) {
          throw ParseError(line_no, "instance token, tag and vector counts disagree");
        }
        for (const auto& v : inst.word_vectors) {
          if (static_cast<std::size_t>(v.size()) != set.word_dim) {
            throw ParseError(line_no, "word vector length differs from header word_dim");
          }
        }
        set.instances.push_back(std::move(inst));
      } else if (kind == "excluded") {
        const std::string reason = j.at("reason").get<std::string>();
        ExcludedInstance ex{j.at("id").get<std::string>(), j.at("sentence_id").get<std::string>(),
                            static_cast<Label>(label), ExclusionReason::Disconnected};
        if (reason == "path_too_long") {
          ex.reason = ExclusionReason::PathTooLong;
        } else if (reason != "disconnected") {
          throw ParseError(line_no, "unknown exclusion reason '" + reason + "'");
        }
        set.excluded.push_back(std::move(ex));
      } else {
        throw ParseError(line_no, "unknown record kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(line_no, e.what());
  }
  return set;
}

void save_instances(const std::filesystem::path& path, const InstanceSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_instances(out, set);
  if (!out) throw IoError("write failed for " + path.string());
}

InstanceSet load_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return read_instances(in);
}

}  // namespace sdplstm
