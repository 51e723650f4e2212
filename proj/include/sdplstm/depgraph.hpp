#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sdplstm/corpus.hpp"

namespace sdplstm {

/// Longest SDP (in tokens) accepted before an instance is excluded.
inline constexpr std::size_t kMaxSdpTokens = 40;

struct DependencyEdge {
  std::size_t head = 0;
  std::size_t dependent = 0;
  std::string relation;

  bool operator==(const DependencyEdge&) const = default;
};

/// Dependency edges keyed by sentence id, in file order.
using DependencyIndex = std::map<std::string, std::vector<DependencyEdge>>;

/// Undirected word graph over a sentence's tokens. Immutable once built.
class DependencyGraph {
 public:
  DependencyGraph(std::string sentence_id, std::size_t node_count,
                  std::span<const DependencyEdge> edges);

  const std::string& sentence_id() const { return sentence_id_; }
  std::size_t node_count() const { return adjacency_.size(); }
  /// Distinct edges in first-seen order; a reversed duplicate counts as the same edge.
  const std::vector<DependencyEdge>& edges() const { return edges_; }
  /// Neighbors of a node in ascending index order.
  const std::vector<std::size_t>& neighbors(std::size_t node) const;
  bool adjacent(std::size_t a, std::size_t b) const;

 private:
  std::string sentence_id_;
  std::vector<DependencyEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct SdpPath {
  std::vector<std::size_t> node_indices;

  std::size_t length() const { return node_indices.empty() ? 0 : node_indices.size() - 1; }
  bool operator==(const SdpPath&) const = default;
};

struct TaggedToken {
  std::string token;
  std::string pos_tag;

  bool operator==(const TaggedToken&) const = default;
};

DependencyGraph build_graph(const SentenceRecord& s, std::span<const DependencyEdge> edges);

/// Breadth-first search visiting neighbors in ascending order, which yields the
/// lexicographically smallest path among all minimal-hop paths.
/// Throws Disconnected when dst is unreachable and PathTooLong when the path
/// would exceed max_tokens nodes.
SdpPath shortest_path(const DependencyGraph& g, std::size_t src, std::size_t dst,
                      std::size_t max_tokens = kMaxSdpTokens);

std::vector<TaggedToken> sdp_tokens(const SdpPath& path, const SentenceRecord& s);

/// Reads `sentence_id<TAB>head<TAB>dependent<TAB>relation` lines.
DependencyIndex parse_dependencies(std::istream& in);
DependencyIndex load_dependencies(const std::filesystem::path& path);
void write_dependencies(std::ostream& out, const DependencyIndex& deps);

}  // namespace sdplstm
