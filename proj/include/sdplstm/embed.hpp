#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

#include "sdplstm/layers.hpp"

namespace sdplstm {

inline constexpr std::size_t kDefaultWordDim = 200;
inline constexpr double kOovRange = 0.05;
inline constexpr std::uint64_t kDefaultOovSeed = 0x5d9u;

/// Input vector x_k = word | PoS dense | position-1 dense | position-2 dense.
using TokenVector = Vector;

/// Widths of the TokenVector blocks. A disabled feature has width 0.
struct TokenLayout {
  std::size_t word_dim = kDefaultWordDim;
  std::size_t pos_dim = 8;
  std::size_t position_dim = 10;

  std::size_t total() const { return word_dim + pos_dim + 2 * position_dim; }
  bool operator==(const TokenLayout&) const = default;
};

/// Pretrained word vectors plus a deterministic fallback for unknown words.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dimension, std::uint64_t oov_seed = kDefaultOovSeed);

  std::size_t dimension() const { return dimension_; }
  std::uint64_t oov_seed() const { return oov_seed_; }
  std::size_t size() const { return vocabulary_.size(); }
  /// Rows skipped at load time because the word was already present.
  std::size_t duplicate_count() const { return duplicates_; }

  /// Adds a vector; returns false (and counts a duplicate) if the word exists.
  bool insert(std::string word, Vector vec);
  bool contains(std::string_view word) const;

  /// Stored vector, else the lowercased word's vector, else the OOV vector.
  Vector lookup(std::string_view token) const;
  /// Hash-seeded vector with components uniform in [-0.05, 0.05].
  Vector oov_vector(std::string_view token) const;

 private:
  std::size_t dimension_;
  std::uint64_t oov_seed_;
  std::size_t duplicates_ = 0;
  std::unordered_map<std::string, Vector> vocabulary_;
};

/// word2vec text format: header `<vocab_size> <dimension>` then one word per line.
EmbeddingTable parse_embeddings(std::istream& in, std::uint64_t oov_seed = kDefaultOovSeed);
/// Reads plain or gzip-compressed (".gz" suffix) word2vec text files.
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               std::uint64_t oov_seed = kDefaultOovSeed);

TokenVector assemble(const TokenLayout& layout, const Vector& word_vec, const Vector& pos_dense,
                     const Vector& position1_dense, const Vector& position2_dense);

}  // namespace sdplstm
