#include "sdplstm/optim.hpp"

#include <cmath>
#include <string>

#include "sdplstm/error.hpp"

namespace sdplstm {

namespace {

void check_layout(const ParamViews& params, const GradViews& grads,
                  std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& b) {
  if (params.size() != grads.size()) {
    throw ShapeMismatch(std::to_string(params.size()) + " parameter tensors but " +
                        std::to_string(grads.size()) + " gradients");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].size() != grads[i].size()) {
      throw ShapeMismatch("tensor " + std::to_string(i) + ": " +
                          std::to_string(params[i].size()) + " values but gradient has " +
                          std::to_string(grads[i].size()));
    }
  }
  if (a.empty()) {
    for (const auto& p : params) {
      a.emplace_back(p.size(), 0.0);
      b.emplace_back(p.size(), 0.0);
    }
    return;
  }
  if (a.size() != params.size()) {
    throw ShapeMismatch("optimizer state tracks " + std::to_string(a.size()) +
                        " tensors, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (a[i].size() != params[i].size()) {
      throw ShapeMismatch("optimizer state for tensor " + std::to_string(i) +
                          " has the wrong size");
    }
  }
}

}  // namespace

void adam_step(AdamState& state, const ParamViews& params, const GradViews& grads) {
  check_layout(params, grads, state.first_moment, state.second_moment);
  const auto& o = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(o.beta1, t);
  const double correction2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    for (std::size_t j = 0; j < params[i].size(); ++j) {
      const double g = grads[i][j];
      m[j] = o.beta1 * m[j] + (1.0 - o.beta1) * g;
      v[j] = o.beta2 * v[j] + (1.0 - o.beta2) * g * g;
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      params[i][j] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.epsilon);
    }
  }
}

void adadelta_step(AdadeltaState& state, const ParamViews& params, const GradViews& grads) {
  check_layout(params, grads, state.mean_sq_grad, state.mean_sq_update);
  const auto& o = state.options;
  ++state.step;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& eg = state.mean_sq_grad[i];
    auto& ex = state.mean_sq_update[i];
    for (std::size_t j = 0; j < params[i].size(); ++j) {
      const double g = grads[i][j];
      eg[j] = o.decay * eg[j] + (1.0 - o.decay) * g * g;
      const double update = -std::sqrt(ex[j] + o.epsilon) / std::sqrt(eg[j] + o.epsilon) * g;
      ex[j] = o.decay * ex[j] + (1.0 - o.decay) * update * update;
      params[i][j] += o.learning_rate * update;
    }
  }
}

}  // namespace sdplstm
