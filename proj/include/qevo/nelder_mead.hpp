#pragma once

#include <Eigen/Dense>
#include <functional>

namespace qevo {

struct NelderMeadOptions {
  int max_iters = 100;
  double initial_step = 0.25;
  /// Stop early once the simplex value spread falls below this.
  double value_tol = 1e-12;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimization with per-coordinate box bounds
/// [lower, upper]; every proposal is clamped into the box.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, double lower, double upper,
    const NelderMeadOptions& options = {});

}  // namespace qevo
