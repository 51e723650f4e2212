#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "sdplstm/corpus.hpp"
#include "sdplstm/depgraph.hpp"

namespace fixtures {

using sdplstm::DependencyEdge;
using sdplstm::Entity;
using sdplstm::SentenceRecord;

inline SentenceRecord make_sentence(const std::string& id, const std::vector<std::string>& tokens,
                                    const std::vector<std::string>& tags,
                                    std::vector<Entity> entities) {
  SentenceRecord s;
  s.id = id;
  s.tokens = tokens;
  s.pos_tags = tags;
  s.entities = std::move(entities);
  return s;
}

inline std::vector<DependencyEdge> edges(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<DependencyEdge> out;
  for (auto [h, d] : pairs) out.push_back(DependencyEdge{h, d, "dep"});
  return out;
}

// "Prot1 is shown to bind with cell surface of Prot2"
inline SentenceRecord bind_sentence() {
  auto s = make_sentence(
      "fig", {"Prot1", "is", "shown", "to", "bind", "with", "cell", "surface", "of", "Prot2"},
      {"NN", "VBZ", "VBN", "TO", "VB", "IN", "NN", "NN", "IN", "NN"},
      {Entity{"p1", 0, 0}, Entity{"p2", 9, 9}});
  s.interactions.emplace_back("p1", "p2");
  return s;
}

inline std::vector<DependencyEdge> bind_edges() {
  return edges({{4, 0}, {5, 4}, {5, 7}, {6, 7}, {8, 7}, {8, 9}, {2, 4}, {3, 4}, {1, 2}});
}

// "Interaction between cell cycle regulator, Prot1, and Prot2 mediates
//  repression of HIV-1 gene transcription."
inline SentenceRecord regulator_sentence() {
  auto s = make_sentence("tab",
                         {"Interaction", "between", "cell", "cycle", "regulator", ",", "Prot1", ",",
                          "and", "Prot2", "mediates", "repression", "of", "HIV-1", "gene",
                          "transcription", "."},
                         {"NN", "IN", "NN", "NN", "NN", ",", "NN", ",", "CC", "NN", "VBZ", "NN",
                          "IN", "NN", "NN", "NN", "."},
                         {Entity{"p1", 6, 6}, Entity{"p2", 9, 9}});
  s.interactions.emplace_back("p1", "p2");
  return s;
}

inline std::vector<DependencyEdge> regulator_edges() {
  return edges({{4, 6}, {1, 4}, {0, 1}, {8, 0}, {8, 11}, {11, 9}, {4, 3}, {3, 2}, {4, 5},
                {6, 7}, {11, 10}, {11, 12}, {12, 15}, {15, 14}, {15, 13}, {0, 16}});
}

/// Every simple path from src to dst, by exhaustive depth-first search.
inline std::vector<std::vector<std::size_t>> all_simple_paths(
    const std::vector<std::vector<bool>>& adj, std::size_t src, std::size_t dst) {
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> current{src};
  std::vector<bool> used(adj.size(), false);
  used[src] = true;
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == dst) {
      paths.push_back(current);
      return;
    }
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (!adj[u][v] || used[v]) continue;
      used[v] = true;
      current.push_back(v);
      dfs(v);
      current.pop_back();
      used[v] = false;
    }
  };
  dfs(src);
  return paths;
}

/// Minimal-length simple paths, sorted lexicographically.
inline std::vector<std::vector<std::size_t>> minimal_paths(
    const std::vector<std::vector<bool>>& adj, std::size_t src, std::size_t dst) {
  auto paths = all_simple_paths(adj, src, dst);
  if (paths.empty()) return paths;
  std::size_t best = paths.front().size();
  for (const auto& p : paths) best = std::min(best, p.size());
  std::erase_if(paths, [&](const auto& p) { return p.size() != best; });
  std::sort(paths.begin(), paths.end());
  return paths;
}

inline std::vector<std::vector<bool>> adjacency(std::size_t n,
                                                const std::vector<DependencyEdge>& es) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : es) adj[e.head][e.dependent] = adj[e.dependent][e.head] = true;
  return adj;
}

}  // namespace fixtures

#include "sdplstm/instances.hpp"
#include "sdplstm/synthetic.hpp"

namespace fixtures {

/// Preprocessed interaction corpus (one pair per sentence, labels alternating).
inline sdplstm::InstanceSet interaction_set(std::size_t sentences, std::uint64_t seed,
                                            std::size_t word_dim = 16) {
  auto c = sdplstm::make_interaction_corpus(sentences, seed, word_dim);
  return sdplstm::preprocess(c.sentences, c.deps, c.embeddings());
}

/// Instances [begin, end) of a set, keeping its settings and dropping exclusions.
inline sdplstm::InstanceSet head(const sdplstm::InstanceSet& set, std::size_t begin,
                                 std::size_t end) {
  sdplstm::InstanceSet out = set;
  out.excluded.clear();
  out.instances.assign(set.instances.begin() + static_cast<std::ptrdiff_t>(begin),
                       set.instances.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

}  // namespace fixtures
