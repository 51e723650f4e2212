#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdplstm/rng.hpp"

namespace sdplstm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Clamp applied to the positive-class probability before taking logs.
inline constexpr double kProbClamp = 1e-12;

enum class Activation : std::uint8_t { Sigmoid = 0, Relu = 1, Tanh = 2 };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

double sigmoid(double x);
Vector sigmoid(const Vector& x);
Vector activate(Activation a, const Vector& pre);
/// Derivative of the activation expressed through its output y = f(pre).
Vector activation_grad(Activation a, const Vector& y);

/// Numerically stable softmax.
Vector softmax(const Vector& logits);

/// Coordinate-wise maximum over a sequence of equal-length states.
Vector max_pool(const std::vector<Vector>& states);

/// Same as max_pool, also reporting for each coordinate the lowest position
/// holding the maximum (where the subgradient is routed).
Vector max_pool(const std::vector<Vector>& states, std::vector<std::size_t>& argmax);

/// Binary cross-entropy of one prediction, with the probability clamped to
/// [1e-12, 1 - 1e-12].
double cross_entropy(double prob_positive, int label);

/// Inverted-dropout mask: each entry is 0 with probability `rate`, else 1/(1-rate).
Vector dropout_mask(std::size_t dim, double rate, Rng& rng);
Vector dropout_mask(std::size_t dim, double rate, std::uint64_t seed);

/// Uniform in +-sqrt(6 / (fan_in + fan_out)), fan_in = cols, fan_out = rows.
void glorot_uniform(Matrix& m, Rng& rng);

/// Fully connected layer y = f(W x + b).
struct Dense {
  Matrix weight;
  Vector bias;
};

bool all_finite(const Vector& v);

}  // namespace sdplstm
