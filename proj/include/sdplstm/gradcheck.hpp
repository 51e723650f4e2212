#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sdplstm/model.hpp"

namespace sdplstm {

/// Magnitudes below this are compared absolutely rather than relatively.
inline constexpr double kGradCheckFloor = 1e-6;

/// |analytic - numeric| / max(|analytic|, |numeric|, kGradCheckFloor)
double relative_error(double analytic, double numeric);

struct TensorCheck {
  std::string name;
  std::size_t size = 0;
  double max_relative_error = 0.0;
  double max_abs_error = 0.0;
};

struct GradCheckReport {
  std::vector<TensorCheck> tensors;  // model tensors, then "inputs"
  double max_relative_error = 0.0;
};

/// Central finite differences on every parameter and input component of one
/// instance, evaluated with dropout disabled.
GradCheckReport gradient_check(const ModelParams& m, const std::vector<Vector>& seq, int label,
                               double epsilon = 1e-5);

}  // namespace sdplstm
