#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sdplstm/layers.hpp"
#include "sdplstm/optim.hpp"

namespace sdplstm {

inline constexpr std::size_t kPosClasses = 8;
inline constexpr std::size_t kDefaultPositionWindow = 10;
inline constexpr std::size_t kMinPositionWindow = 5;
inline constexpr std::size_t kMaxPositionWindow = 12;

/// Coarse word classes, in one-hot bit order.
enum class CoarsePos : std::uint8_t {
  Noun = 0,
  Verb = 1,
  Adjective = 2,
  Adverb = 3,
  Preposition = 4,  // prepositions, particles, "to"
  Conjunction = 5,
  Determiner = 6,   // determiners, pronouns, numbers
  Other = 7,
};

/// Fine tag -> coarse class lookup. Unknown tags map to CoarsePos::Other.
class PosClassTable {
 public:
  static constexpr int kVersion = 1;

  /// The Penn Treebank mapping that ships with the toolkit (data/pos_classes.tsv).
  static PosClassTable penn_default();
  /// Reads `tag<TAB>class_index` lines; '#' starts a comment line.
  static PosClassTable parse(std::istream& in);
  static PosClassTable load(const std::filesystem::path& path);

  explicit PosClassTable(std::map<std::string, std::size_t> entries = {});

  std::size_t classify(std::string_view tag) const;
  const std::map<std::string, std::size_t>& entries() const { return entries_; }
  void write(std::ostream& out) const;

  bool operator==(const PosClassTable&) const = default;

 private:
  std::map<std::string, std::size_t> entries_;
};

/// Class index of a tag under the default table.
std::size_t coarse_pos(std::string_view tag);

/// Binary feature codes. bits[0] is the leftmost (highest-order) digit when printed.
struct PosOneHot {
  std::array<std::uint8_t, kPosClasses> bits{};

  std::string to_string() const;
  Vector to_vector() const;
  bool operator==(const PosOneHot&) const = default;
};

struct PositionCode {
  std::vector<std::uint8_t> bits;

  std::string to_string() const;
  Vector to_vector() const;
  std::size_t popcount() const;
  bool operator==(const PositionCode&) const = default;
};

PosOneHot encode_pos_onehot(std::size_t class_index);

/// Thermometer code of |rel_distance| capped at `window`: the min(|d|, window)
/// lowest-order bits are set.
PositionCode encode_position(long rel_distance, std::size_t window = kDefaultPositionWindow);

/// d -> d -> d autoencoder with sigmoid encoder and decoder.
struct Autoencoder {
  Matrix encoder_weight;
  Vector encoder_bias;
  Matrix decoder_weight;
  Vector decoder_bias;

  std::size_t dim() const { return static_cast<std::size_t>(encoder_bias.size()); }
  /// Zero-weight autoencoder of the given dimension.
  static Autoencoder zeros(std::size_t d);

  bool operator==(const Autoencoder& other) const;
};

struct AutoencoderFit {
  Autoencoder model;
  /// Mean squared reconstruction error before each epoch's update.
  std::vector<double> losses;
};

struct AutoencoderOptions {
  std::size_t epochs = 500;
  AdadeltaOptions adadelta;
};

/// Full-batch Adadelta on the summed squared reconstruction error. Deterministic in seed.
AutoencoderFit train_autoencoder(const std::vector<Vector>& samples, std::size_t d,
                                 std::uint64_t seed, const AutoencoderOptions& options = {});

/// Encoder output sigmoid(W_enc * bits + b_enc).
Vector encode_dense(const Autoencoder& ae, const Vector& bits);
/// Decoder applied to the encoder output.
Vector reconstruct(const Autoencoder& ae, const Vector& bits);
/// Mean over samples and components of the squared reconstruction error.
double reconstruction_loss(const Autoencoder& ae, const std::vector<Vector>& samples);

}  // namespace sdplstm
