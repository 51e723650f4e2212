#pragma once

#include <cstddef>
#include <vector>

#include "sdplstm/layers.hpp"

namespace sdplstm {

/// Gate blocks inside the stacked LSTM tensors, in row order.
enum class Gate : std::size_t { Input = 0, Forget = 1, Output = 2, Update = 3 };

/// LSTM weights with the four gates stacked row-wise:
///   pre = input_weight * x + recurrent_weight * h_prev + bias   (4*units rows)
/// rows [g*units, (g+1)*units) belong to Gate g.
struct LstmParams {
  Matrix input_weight;      // 4u x input_dim
  Matrix recurrent_weight;  // 4u x u
  Vector bias;              // 4u

  std::size_t units() const { return static_cast<std::size_t>(recurrent_weight.cols()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(input_weight.cols()); }

  auto input_block(Gate g) { return input_weight.middleRows(row(g), rows()); }
  auto recurrent_block(Gate g) { return recurrent_weight.middleRows(row(g), rows()); }
  auto bias_block(Gate g) { return bias.segment(row(g), rows()); }
  auto input_block(Gate g) const { return input_weight.middleRows(row(g), rows()); }
  auto recurrent_block(Gate g) const { return recurrent_weight.middleRows(row(g), rows()); }
  auto bias_block(Gate g) const { return bias.segment(row(g), rows()); }

  static LstmParams zeros(std::size_t input_dim, std::size_t units);
  /// Per-gate Glorot-uniform weights, zero biases except the forget gate at 1.
  static LstmParams glorot(std::size_t input_dim, std::size_t units, Rng& rng);

  bool operator==(const LstmParams& o) const {
    return input_weight == o.input_weight && recurrent_weight == o.recurrent_weight &&
           bias == o.bias;
  }

 private:
  Eigen::Index row(Gate g) const {
    return static_cast<Eigen::Index>(static_cast<std::size_t>(g) * units());
  }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(units()); }
};

struct LstmState {
  Vector h;
  Vector c;
};

/// One step: sigmoid gates i, f, o; tanh candidate u; c = i*u + f*c_prev; h = o*tanh(c).
LstmState lstm_cell(const LstmParams& p, const Vector& x, const Vector& h_prev,
                    const Vector& c_prev);

/// Forward activations of one direction, indexed by processing step.
struct LstmTrace {
  bool reversed = false;
  std::vector<Vector> gates;  // activated [i; f; o; u]
  std::vector<Vector> cells;
  std::vector<Vector> hidden;

  /// Hidden state aligned to sequence position k.
  const Vector& hidden_at(std::size_t k) const {
    return hidden[reversed ? hidden.size() - 1 - k : k];
  }
};

/// Runs the LSTM from a zero state over xs, right to left when `reversed`.
LstmTrace lstm_sequence(const LstmParams& p, const std::vector<Vector>& xs, bool reversed);

/// Backpropagates through a traced pass. d_hidden[k] is the loss gradient
/// w.r.t. the hidden state at sequence position k. Gradients accumulate into
/// `grad`; input gradients are added to d_inputs when it is non-null.
void lstm_sequence_backward(const LstmParams& p, const std::vector<Vector>& xs,
                            const LstmTrace& trace, const std::vector<Vector>& d_hidden,
                            LstmParams& grad, std::vector<Vector>* d_inputs);

}  // namespace sdplstm
