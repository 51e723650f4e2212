#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sdplstm {

/// Flat views over every trainable tensor; gradients mirror the same layout.
using ParamViews = std::vector<std::span<double>>;
using GradViews = std::vector<std::span<const double>>;

/// View over any contiguous Eigen dense object (column-major storage).
template <typename Dense>
std::span<double> flat(Dense& d) {
  return {d.data(), static_cast<std::size_t>(d.size())};
}
template <typename Dense>
std::span<const double> flat(const Dense& d) {
  return {d.data(), static_cast<std::size_t>(d.size())};
}

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamOptions options;
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
  std::uint64_t step = 0;
};

/// Adam with bias correction. Accumulators are sized on the first call.
void adam_step(AdamState& state, const ParamViews& params, const GradViews& grads);

struct AdadeltaOptions {
  double decay = 0.95;
  double epsilon = 1e-6;
  double learning_rate = 1.0;
};

struct AdadeltaState {
  AdadeltaOptions options;
  std::vector<std::vector<double>> mean_sq_grad;
  std::vector<std::vector<double>> mean_sq_update;
  std::uint64_t step = 0;
};

void adadelta_step(AdadeltaState& state, const ParamViews& params, const GradViews& grads);

}  // namespace sdplstm
