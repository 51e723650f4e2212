#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdplstm/corpus.hpp"
#include "sdplstm/depgraph.hpp"
#include "sdplstm/embed.hpp"
#include "sdplstm/features.hpp"

namespace sdplstm {

/// One candidate pair reduced to its shortest dependency path. Sparse feature
/// codes are derived from the tags and SDP positions; the dense encoding
/// happens at training time with the fold's autoencoders.
struct SdpInstance {
  std::string id;  // candidate_id of the pair
  std::string sentence_id;
  Label label = Label::NonInteracting;
  std::vector<std::string> tokens;    // PROT1 first, PROT2 last
  std::vector<std::string> pos_tags;
  std::vector<Vector> word_vectors;

  std::size_t length() const { return tokens.size(); }
  bool operator==(const SdpInstance& o) const;
};

enum class ExclusionReason : std::uint8_t { Disconnected = 0, PathTooLong = 1 };

std::string_view to_string(ExclusionReason r);

/// A candidate pair with no usable SDP.
struct ExcludedInstance {
  std::string id;
  std::string sentence_id;
  Label label = Label::NonInteracting;
  ExclusionReason reason = ExclusionReason::Disconnected;

  bool operator==(const ExcludedInstance&) const = default;
};

/// Output of preprocessing plus the settings it was produced with.
struct InstanceSet {
  std::size_t word_dim = kDefaultWordDim;
  std::size_t window = kDefaultPositionWindow;
  bool use_pos = true;
  bool use_position = true;
  std::uint64_t oov_seed = kDefaultOovSeed;
  std::vector<SdpInstance> instances;
  std::vector<ExcludedInstance> excluded;

  std::size_t generated() const { return instances.size() + excluded.size(); }
  std::size_t excluded_count(ExclusionReason reason) const;
  bool operator==(const InstanceSet&) const = default;
};

struct PreprocessOptions {
  std::size_t window = kDefaultPositionWindow;
  bool use_pos = true;
  bool use_position = true;
  std::size_t max_sdp_tokens = kMaxSdpTokens;
  /// When set, a sentence with candidate pairs but no dependency lines is an
  /// error instead of an edgeless graph.
  bool require_dependencies = false;
};

/// Maps dependency edges given over original token positions onto the
/// generalized sentence, where every entity span is a single token. Edges
/// internal to one span disappear.
std::vector<DependencyEdge> remap_edges(const SentenceRecord& original,
                                        const std::vector<DependencyEdge>& edges);

/// generalize -> build_graph -> shortest_path -> sdp_tokens -> word lookup,
/// for every candidate pair of every sentence.
InstanceSet preprocess(const std::vector<SentenceRecord>& corpus, const DependencyIndex& deps,
                       const EmbeddingTable& embeddings, const PreprocessOptions& options = {});

/// Relative SDP positions of token k in a path of n tokens: (k, k - (n - 1)).
std::pair<long, long> relative_positions(std::size_t k, std::size_t n);

/// JSON-lines instance file: a header object, then one object per instance or exclusion.
void write_instances(std::ostream& out, const InstanceSet& set);
InstanceSet read_instances(std::istream& in);
void save_instances(const std::filesystem::path& path, const InstanceSet& set);
InstanceSet load_instances(const std::filesystem::path& path);

}  // namespace sdplstm
