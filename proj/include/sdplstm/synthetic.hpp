#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sdplstm/corpus.hpp"
#include "sdplstm/depgraph.hpp"
#include "sdplstm/embed.hpp"

namespace sdplstm {

/// Generated sentences, dependency edges and word vectors, for tests and demos.
struct SyntheticCorpus {
  std::vector<SentenceRecord> sentences;
  DependencyIndex deps;
  std::size_t word_dim = 0;
  std::vector<std::pair<std::string, Vector>> word_vectors;

  std::size_t positives = 0;
  std::size_t negatives = 0;
  /// Candidate pairs in sentences that have no dependency edges.
  std::size_t expected_excluded = 0;

  EmbeddingTable embeddings(std::uint64_t oov_seed = kDefaultOovSeed) const;
  /// Writes corpus.tsv, deps.tsv and embeddings.txt into `dir`.
  void write(const std::filesystem::path& dir) const;
};

/// One candidate pair per sentence: PROT1, path words, PROT2 along a chain of
/// dependency edges, plus off-path leaves. A pair interacts iff its path holds
/// "bind" or "interacts"; leaves may hold those words too. Labels alternate
/// with the sentence index, starting with an interacting pair.
SyntheticCorpus make_interaction_corpus(std::size_t sentences, std::uint64_t seed,
                                        std::size_t word_dim = 16);

/// Sentences with 2 to 4 entities on random dependency trees, with exactly
/// `positives` interacting and `negatives` non-interacting candidate pairs.
/// The first `edgeless` sentences get no dependency lines.
SyntheticCorpus make_ppi_fixture(std::size_t positives, std::size_t negatives,
                                 std::size_t edgeless, std::uint64_t seed,
                                 std::size_t word_dim = 16);

}  // namespace sdplstm
