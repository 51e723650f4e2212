#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sdplstm/config.hpp"
#include "sdplstm/embed.hpp"
#include "sdplstm/features.hpp"
#include "sdplstm/instances.hpp"
#include "sdplstm/model.hpp"

namespace sdplstm {

inline constexpr std::uint16_t kCheckpointVersion = 2;
inline constexpr std::string_view kCheckpointMagic = "SDPL";

/// Everything needed to turn an SdpInstance into model inputs.
struct FeatureEncoders {
  PosClassTable pos_table = PosClassTable::penn_default();
  Autoencoder pos_autoencoder = Autoencoder::zeros(kPosClasses);
  Autoencoder position_autoencoder = Autoencoder::zeros(kDefaultPositionWindow);
  std::size_t word_dim = kDefaultWordDim;
  std::size_t window = kDefaultPositionWindow;
  bool use_pos = true;
  bool use_position = true;

  TokenLayout layout() const;
  /// x_k for every SDP token. Tokens present in `tuned` use that word vector.
  std::vector<TokenVector> encode(const SdpInstance& inst,
                                  const std::map<std::string, Vector>* tuned = nullptr) const;

  bool operator==(const FeatureEncoders&) const = default;
};

struct Checkpoint {
  std::uint16_t format_version = kCheckpointVersion;
  TrainConfig config;
  ModelParams model;
  FeatureEncoders encoders;
  std::uint64_t oov_seed = kDefaultOovSeed;
  /// Word vectors used for the PROT1 / PROT2 / PROTX placeholders.
  std::map<std::string, Vector> special_vectors;
  /// Fine-tuned word vectors (only with tune_embeddings).
  std::map<std::string, Vector> tuned_embeddings;
  /// Mean training loss per epoch.
  std::vector<double> loss_history;

  bool operator==(const Checkpoint& o) const;
};

/// "SDPL", u16 version, u64 payload length, payload, u64 FNV-1a checksum of the payload.
/// All integers little-endian; doubles stored as their IEEE-754 bit patterns.
std::string serialize_checkpoint(const Checkpoint& ck);
Checkpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace sdplstm
