#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sdplstm/layers.hpp"
#include "sdplstm/model.hpp"

namespace sdplstm {

enum class OptimizerKind : std::uint8_t { Adam = 0, Adadelta = 1 };

std::string_view to_string(OptimizerKind k);
OptimizerKind parse_optimizer(std::string_view name);

/// Training and evaluation settings. Defaults are the tuned values for sdpLSTM.
struct TrainConfig {
  Architecture model = Architecture::SdpLstm;
  std::size_t lstm_units = 64;
  double dropout = 0.3;
  Activation activation = Activation::Sigmoid;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  std::size_t epochs = 130;
  std::size_t mlp_hidden = 30;
  std::size_t mlp_depth = 1;
  std::size_t batch = 16;
  std::uint64_t seed = 1;
  bool use_pos = true;
  bool use_position = true;
  std::size_t position_window = 10;
  std::string embedding_path;       // empty: every word gets its hashed fallback vector
  std::size_t embedding_dim = 200;  // used only when embedding_path is empty
  std::uint64_t oov_seed = 0x5d9;
  std::size_t k_folds = 10;
  std::size_t fixed_length = 20;    // window of the concatenation baseline
  std::size_t autoencoder_epochs = 500;
  bool tune_embeddings = false;
  bool score_excluded = true;
  std::size_t max_sdp_tokens = 40;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

/// Applies one `key=value` setting; unknown keys are ConfigError.
void apply_setting(TrainConfig& config, std::string_view key, std::string_view value);

/// Flat `key=value` lines; blank lines and '#' comments are ignored.
TrainConfig parse_config(std::istream& in);
TrainConfig load_config(const std::filesystem::path& path);

/// Canonical text form: every key, fixed order, shortest round-trip numbers.
std::string format_config(const TrainConfig& config);

}  // namespace sdplstm
