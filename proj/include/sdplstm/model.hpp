#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdplstm/layers.hpp"
#include "sdplstm/lstm.hpp"
#include "sdplstm/optim.hpp"

namespace sdplstm {

inline constexpr std::size_t kLabelCount = 2;

/// Sequence encoder feeding the shared MLP head.
enum class Architecture : std::uint8_t {
  SdpLstm = 0,      // bidirectional LSTM + max-pooling over time
  BaselineMlp = 1,  // concatenation of a padded/truncated token window
  BaselineRnn = 2,  // final state of a sigmoid Elman RNN
};

std::string_view to_string(Architecture a);
Architecture parse_architecture(std::string_view name);

struct ModelShape {
  Architecture architecture = Architecture::SdpLstm;
  std::size_t input_dim = 0;
  std::size_t units = 64;        // LSTM units per direction, or RNN width
  std::size_t mlp_hidden = 30;
  std::size_t mlp_depth = 1;
  std::size_t fixed_length = 20;  // BaselineMlp window
  Activation activation = Activation::Sigmoid;

  /// Width of the sequence summary S fed to the head.
  std::size_t summary_dim() const;
  bool operator==(const ModelShape&) const = default;
};

/// h_k = sigmoid(U x_k + V h_{k-1} + b)
struct RnnParams {
  Matrix input_weight;      // U
  Matrix recurrent_weight;  // V
  Vector bias;              // b
};

/// All trainable tensors. Unused encoder blocks are empty for a given architecture.
struct ModelParams {
  ModelShape shape;
  LstmParams forward_lstm;
  LstmParams backward_lstm;
  RnnParams rnn;
  std::vector<Dense> mlp_hidden;  // M = f(W_M S + b_M), repeated mlp_depth times
  Matrix output_weight;           // W_T, L x H

  static ModelParams zeros(const ModelShape& shape);
  static ModelParams init(const ModelShape& shape, Rng& rng);

  /// Tensors in a fixed order shared by gradients and optimizer state.
  ParamViews views();
  GradViews views() const;
  std::vector<std::string> tensor_names() const;
  std::size_t parameter_count() const;

  bool operator==(const ModelParams& o) const;
};

struct HeadOutput {
  std::vector<Vector> hidden;  // M per layer
  Vector logits;               // T
  Vector probs;
};

/// Dropout masks for the pooled summary and each hidden layer's output.
struct DropoutMasks {
  Vector summary;
  std::vector<Vector> hidden;
};

DropoutMasks draw_dropout(const ModelShape& shape, double rate, Rng& rng);

/// z_k = forward h_k | backward h_k for every position.
std::vector<Vector> bilstm_forward(const ModelParams& m, const std::vector<Vector>& seq);

/// Sequence summary S for any architecture (evaluation mode).
Vector encode_sequence(const ModelParams& m, const std::vector<Vector>& seq);

/// M = f(W_M S + b_M) per layer, T = W_T M, probs = softmax(T).
HeadOutput mlp_head(const ModelParams& m, const Vector& summary);

/// Class probabilities with dropout disabled; probs[1] is the Interacting class.
Vector predict_proba(const ModelParams& m, const std::vector<Vector>& seq);

/// Cross-entropy of one instance in evaluation mode.
double instance_loss(const ModelParams& m, const std::vector<Vector>& seq, int label);

/// Forward + reverse pass for one instance. Adds dLoss/dparam into `grad`
/// (which must share m's shape) and, if d_inputs is non-null, fills it with
/// dLoss/dx_k. `masks` == nullptr means evaluation mode. Returns the loss.
double backward(const ModelParams& m, const std::vector<Vector>& seq, int label,
                const DropoutMasks* masks, ModelParams& grad, std::vector<Vector>* d_inputs);

}  // namespace sdplstm
