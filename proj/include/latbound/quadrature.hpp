#pragma once

#include <functional>

namespace latbound {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// The interval with the largest local error estimate is bisected until the
/// summed estimate meets max(abs_tol, rel_tol * |value|). Non-convergence is
/// reported through `converged`, never thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

}  // namespace latbound
