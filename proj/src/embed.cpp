#include "sdplstm/embed.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>

#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"
#include "text_util.hpp"

namespace sdplstm {

namespace {

class GzStreamBuf : public std::streambuf {
 public:
  explicit GzStreamBuf(const std::filesystem::path& path)
      : file_(gzopen(path.c_str(), "rb")) {}
  ~GzStreamBuf() override {
    if (file_) gzclose(file_);
  }
  GzStreamBuf(const GzStreamBuf&) = delete;
  GzStreamBuf& operator=(const GzStreamBuf&) = delete;

  bool is_open() const { return file_ != nullptr; }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    const int n = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (n <= 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
    return traits_type::to_int_type(*gptr());
  }

 private:
  gzFile file_;
  std::array<char, 1 << 16> buffer_{};
};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension, std::uint64_t oov_seed)
    : dimension_(dimension), oov_seed_(oov_seed) {
  if (dimension == 0) throw DimensionMismatch("embedding dimension must be positive");
}

bool EmbeddingTable::insert(std::string word, Vector vec) {
  if (static_cast<std::size_t>(vec.size()) != dimension_) {
    throw DimensionMismatch("vector for '" + word + "' has " + std::to_string(vec.size()) +
                            " values, table dimension is " + std::to_string(dimension_));
  }
  if (vocabulary_.count(word)) {
    ++duplicates_;
    return false;
  }
  vocabulary_.emplace(std::move(word), std::move(vec));
  return true;
}

bool EmbeddingTable::contains(std::string_view word) const {
  return vocabulary_.count(std::string(word)) > 0;
}

Vector EmbeddingTable::lookup(std::string_view token) const {
  if (auto it = vocabulary_.find(std::string(token)); it != vocabulary_.end()) return it->second;
  if (auto it = vocabulary_.find(lowercase(token)); it != vocabulary_.end()) return it->second;
  return oov_vector(token);
}

Vector EmbeddingTable::oov_vector(std::string_view token) const {
  Rng rng(mix64(fnv1a64(token), oov_seed_));
  Vector v(static_cast<Eigen::Index>(dimension_));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-kOovRange, kOovRange);
  return v;
}

EmbeddingTable parse_embeddings(std::istream& in, std::uint64_t oov_seed) {
  std::string raw;
  if (!std::getline(in, raw)) throw FormatError("missing '<vocab_size> <dimension>' header");
  auto header = split_ws(detail::strip_cr(raw));
  std::optional<std::size_t> vocab_size, dim;
  if (header.size() == 2) {
    vocab_size = detail::parse_number<std::size_t>(header[0]);
    dim = detail::parse_number<std::size_t>(header[1]);
  }
  if (!vocab_size || !dim || *dim == 0) {
    throw FormatError("bad header '" + raw + "', expected '<vocab_size> <dimension>'");
  }

  EmbeddingTable table(*dim, oov_seed);
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_cr(raw);
    if (detail::trim(line).empty()) continue;
    auto parts = split_ws(line);
    if (parts.size() - 1 != *dim) {
      throw DimensionMismatch("line " + std::to_string(line_no) + ": " +
                              std::to_string(parts.size() - 1) + " values under header dimension " +
                              std::to_string(*dim));
    }
    Vector v(static_cast<Eigen::Index>(*dim));
    for (std::size_t i = 0; i < *dim; ++i) {
      auto value = detail::parse_number<double>(parts[i + 1]);
      if (!value || !std::isfinite(*value)) {
        throw FormatError("line " + std::to_string(line_no) + ": bad value '" +
                          std::string(parts[i + 1]) + "'");
      }
      v[static_cast<Eigen::Index>(i)] = *value;
    }
    table.insert(std::string(parts[0]), std::move(v));
    ++rows;
  }
  if (rows != *vocab_size) {
    throw FormatError("header declares " + std::to_string(*vocab_size) + " words, file has " +
                      std::to_string(rows));
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, std::uint64_t oov_seed) {
  if (!std::filesystem::exists(path)) throw FileNotFound(path.string());
  if (path.extension() == ".gz") {
    GzStreamBuf buf(path);
    if (!buf.is_open()) throw IoError("cannot open " + path.string());
    std::istream in(&buf);
    return parse_embeddings(in, oov_seed);
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_embeddings(in, oov_seed);
}

TokenVector assemble(const TokenLayout& layout, const Vector& word_vec, const Vector& pos_dense,
                     const Vector& position1_dense, const Vector& position2_dense) {
  auto check = [](const Vector& v, std::size_t want, const char* what) {
    if (static_cast<std::size_t>(v.size()) != want) {
      throw DimensionMismatch(std::string(what) + " has " + std::to_string(v.size()) +
                              " components, layout expects " + std::to_string(want));
    }
  };
  check(word_vec, layout.word_dim, "word vector");
  check(pos_dense, layout.pos_dim, "PoS vector");
  check(position1_dense, layout.position_dim, "position-1 vector");
  check(position2_dense, layout.position_dim, "position-2 vector");

  TokenVector x(static_cast<Eigen::Index>(layout.total()));
  Eigen::Index at = 0;
  for (const Vector* part : {&word_vec, &pos_dense, &position1_dense, &position2_dense}) {
    x.segment(at, part->size()) = *part;
    at += part->size();
  }
  return x;
}

}  // namespace sdplstm
