#include "sdplstm/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace sdplstm {

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), kGradCheckFloor});
  return std::abs(analytic - numeric) / denom;
}

GradCheckReport gradient_check(const ModelParams& m, const std::vector<Vector>& seq, int label,
                               double epsilon) {
  ModelParams grad = ModelParams::zeros(m.shape);
  std::vector<Vector> d_inputs;
  backward(m, seq, label, nullptr, grad, &d_inputs);

  GradCheckReport report;
  auto record = [&](TensorCheck check) {
    report.max_relative_error = std::max(report.max_relative_error, check.max_relative_error);
    report.tensors.push_back(std::move(check));
  };

  ModelParams probe = m;
  const auto names = m.tensor_names();
  auto params = probe.views();
  const auto analytic = grad.views();
  for (std::size_t t = 0; t < params.size(); ++t) {
    TensorCheck check{names[t], params[t].size(), 0.0, 0.0};
    for (std::size_t j = 0; j < params[t].size(); ++j) {
      const double saved = params[t][j];
      params[t][j] = saved + epsilon;
      const double up = instance_loss(probe, seq, label);
      params[t][j] = saved - epsilon;
      const double down = instance_loss(probe, seq, label);
      params[t][j] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      check.max_relative_error =
          std::max(check.max_relative_error, relative_error(analytic[t][j], numeric));
      check.max_abs_error = std::max(check.max_abs_error, std::abs(analytic[t][j] - numeric));
    }
    if (check.size > 0) record(check);
  }

  std::vector<Vector> xs = seq;
  TensorCheck inputs{"inputs", 0, 0.0, 0.0};
  for (std::size_t k = 0; k < xs.size(); ++k) {
    for (Eigen::Index j = 0; j < xs[k].size(); ++j) {
      const double saved = xs[k][j];
      xs[k][j] = saved + epsilon;
      const double up = instance_loss(m, xs, label);
      xs[k][j] = saved - epsilon;
      const double down = instance_loss(m, xs, label);
      xs[k][j] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      inputs.max_relative_error =
          std::max(inputs.max_relative_error, relative_error(d_inputs[k][j], numeric));
      inputs.max_abs_error = std::max(inputs.max_abs_error, std::abs(d_inputs[k][j] - numeric));
      ++inputs.size;
    }
  }
  record(inputs);
  return report;
}

}  // namespace sdplstm
