#include "sdplstm/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "sdplstm/error.hpp"
#include "text_util.hpp"

namespace sdplstm {

DependencyGraph::DependencyGraph(std::string sentence_id, std::size_t node_count,
                                 std::span<const DependencyEdge> edges)
    : sentence_id_(std::move(sentence_id)), adjacency_(node_count) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.head >= node_count || e.dependent >= node_count) {
      throw IndexOutOfRange("edge (" + std::to_string(e.head) + "," +
                            std::to_string(e.dependent) + ") in sentence '" + sentence_id_ +
                            "' with " + std::to_string(node_count) + " tokens");
    }
    if (e.head == e.dependent) {
      throw SelfLoop("edge (" + std::to_string(e.head) + "," + std::to_string(e.dependent) +
                     ") in sentence '" + sentence_id_ + "'");
    }
    auto key = std::minmax(e.head, e.dependent);
    if (!seen.insert({key.first, key.second}).second) continue;
    edges_.push_back(e);
    adjacency_[e.head].push_back(e.dependent);
    adjacency_[e.dependent].push_back(e.head);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

const std::vector<std::size_t>& DependencyGraph::neighbors(std::size_t node) const {
  if (node >= adjacency_.size()) {
    throw IndexOutOfRange("node " + std::to_string(node) + " of " +
                          std::to_string(adjacency_.size()));
  }
  return adjacency_[node];
}

bool DependencyGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

DependencyGraph build_graph(const SentenceRecord& s, std::span<const DependencyEdge> edges) {
  return DependencyGraph(s.id, s.tokens.size(), edges);
}

SdpPath shortest_path(const DependencyGraph& g, std::size_t src, std::size_t dst,
                      std::size_t max_tokens) {
  const std::size_t n = g.node_count();
  if (src >= n || dst >= n) {
    throw IndexOutOfRange("endpoints " + std::to_string(src) + "," + std::to_string(dst) +
                          " in graph of " + std::to_string(n) + " nodes");
  }
  if (src == dst) throw InputError("shortest_path endpoints must differ");

  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, unseen);
  parent[src] = src;
  std::deque<std::size_t> queue{src};
  while (!queue.empty() && parent[dst] == unseen) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : g.neighbors(u)) {
      if (parent[v] != unseen) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (parent[dst] == unseen) {
    throw Disconnected("no path between tokens " + std::to_string(src) + " and " +
                       std::to_string(dst) + " in sentence '" + g.sentence_id() + "'");
  }

  SdpPath path;
  for (std::size_t v = dst; v != src; v = parent[v]) path.node_indices.push_back(v);
  path.node_indices.push_back(src);
  std::reverse(path.node_indices.begin(), path.node_indices.end());
  if (path.node_indices.size() > max_tokens) {
    throw PathTooLong(std::to_string(path.node_indices.size()) + " tokens (cap " +
                      std::to_string(max_tokens) + ") in sentence '" + g.sentence_id() + "'");
  }
  return path;
}

std::vector<TaggedToken> sdp_tokens(const SdpPath& path, const SentenceRecord& s) {
  std::vector<TaggedToken> out;
  out.reserve(path.node_indices.size());
  for (std::size_t i : path.node_indices) {
    if (i >= s.tokens.size()) {
      throw IndexOutOfRange("path node " + std::to_string(i) + " beyond sentence '" + s.id +
                            "'");
    }
    out.push_back(TaggedToken{s.tokens[i], s.pos_tags[i]});
  }
  return out;
}

DependencyIndex parse_dependencies(std::istream& in) {
  DependencyIndex index;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    auto head = detail::parse_number<std::size_t>(fields[1]);
    auto dep = detail::parse_number<std::size_t>(fields[2]);
    if (fields[0].empty() || !head || !dep) {
      throw ParseError(line_no, "malformed edge '" + std::string(line) + "'");
    }
    index[std::string(fields[0])].push_back(DependencyEdge{*head, *dep, std::string(fields[3])});
  }
  return index;
}

DependencyIndex load_dependencies(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return parse_dependencies(in);
}

void write_dependencies(std::ostream& out, const DependencyIndex& deps) {
  for (const auto& [sid, edges] : deps) {
    for (const auto& e : edges) {
      out << sid << '\t' << e.head << '\t' << e.dependent << '\t' << e.relation << '\n';
    }
  }
}

}  // namespace sdplstm
