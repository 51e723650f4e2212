#include "sdplstm/layers.hpp"

#include <algorithm>
#include <cmath>

#include "sdplstm/error.hpp"

namespace sdplstm {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

Activation parse_activation(std::string_view name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "relu") return Activation::Relu;
  if (name == "tanh") return Activation::Tanh;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector sigmoid(const Vector& x) { return x.unaryExpr([](double v) { return sigmoid(v); }); }

Vector activate(Activation a, const Vector& pre) {
  switch (a) {
    case Activation::Sigmoid: return sigmoid(pre);
    case Activation::Relu: return pre.cwiseMax(0.0);
    case Activation::Tanh: return pre.array().tanh().matrix();
  }
  return pre;
}

Vector activation_grad(Activation a, const Vector& y) {
  switch (a) {
    case Activation::Sigmoid: return (y.array() * (1.0 - y.array())).matrix();
    case Activation::Relu: return y.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    case Activation::Tanh: return (1.0 - y.array().square()).matrix();
  }
  return Vector::Ones(y.size());
}

Vector softmax(const Vector& logits) {
  const double top = logits.maxCoeff();
  Vector e = (logits.array() - top).exp().matrix();
  return e / e.sum();
}

Vector max_pool(const std::vector<Vector>& states, std::vector<std::size_t>& argmax) {
  if (states.empty()) throw EmptySequence("max_pool over no states");
  const auto dim = states.front().size();
  Vector pooled = states.front();
  argmax.assign(static_cast<std::size_t>(dim), 0);
  for (std::size_t k = 1; k < states.size(); ++k) {
    if (states[k].size() != dim) throw DimensionMismatch("max_pool states differ in length");
    for (Eigen::Index i = 0; i < dim; ++i) {
      // Strict comparison keeps ties at the lowest position.
      if (states[k][i] > pooled[i]) {
        pooled[i] = states[k][i];
        argmax[static_cast<std::size_t>(i)] = k;
      }
    }
  }
  return pooled;
}

Vector max_pool(const std::vector<Vector>& states) {
  std::vector<std::size_t> argmax;
  return max_pool(states, argmax);
}

double cross_entropy(double prob_positive, int label) {
  const double a = std::clamp(prob_positive, kProbClamp, 1.0 - kProbClamp);
  return label == 1 ? -std::log(a) : -std::log(1.0 - a);
}

Vector dropout_mask(std::size_t dim, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw BadRate("dropout rate " + std::to_string(rate) + " outside [0, 1)");
  }
  Vector mask(static_cast<Eigen::Index>(dim));
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask[i] = rng.uniform01() < rate ? 0.0 : keep_scale;
  }
  return mask;
}

Vector dropout_mask(std::size_t dim, double rate, std::uint64_t seed) {
  Rng rng(seed);
  return dropout_mask(dim, rate, rng);
}

void glorot_uniform(Matrix& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  // Row-major fill order so the draw sequence does not depend on storage layout.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-limit, limit);
  }
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace sdplstm
